// Copyright 2026 The CCSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccss/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "ccss/errors.h"

namespace ccss {

RgbImage::RgbImage(int w, int h, uint8_t fill)
    : width(w),
      height(h),
      pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3,
             fill) {}

void RgbImage::Put(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const std::size_t i =
      (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + x) * 3;
  pixels[i] = r;
  pixels[i + 1] = g;
  pixels[i + 2] = b;
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kFileNotFound, path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void WriteFileBytes(const std::string& path,
                    const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

namespace {

// Tokenizer over the ASCII header of a PNM file; '#' starts a comment.
class PnmReader {
 public:
  explicit PnmReader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  std::string Token() {
    SkipSpaceAndComments();
    std::string token;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) &&
           bytes_[pos_] != '#') {
      token.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (token.empty()) throw Error(ErrorCode::kParse, "truncated PGM header");
    return token;
  }

  int Int() {
    const std::string t = Token();
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad integer in PGM: " + t);
    }
  }

  // After the maxval exactly one whitespace byte precedes raster data.
  void SkipSingleWhitespace() {
    if (pos_ < bytes_.size() && std::isspace(bytes_[pos_])) ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

BinaryMask DecodePgm(const std::vector<uint8_t>& bytes, int threshold) {
  PnmReader reader(bytes);
  const std::string magic = reader.Token();
  if (magic != "P2" && magic != "P5") {
    throw Error(ErrorCode::kParse, "unsupported PNM magic " + magic);
  }
  const int width = reader.Int();
  const int height = reader.Int();
  const int maxval = reader.Int();
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw Error(ErrorCode::kParse, "invalid PGM dimensions or maxval");
  }
  // Threshold is defined on the 8-bit scale.
  const double scale = 255.0 / maxval;
  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<uint8_t> bits(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      bits[i] = reader.Int() * scale >= threshold ? 1 : 0;
    }
  } else {
    reader.SkipSingleWhitespace();
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (bytes.size() < reader.pos() + count * bpp) {
      throw Error(ErrorCode::kParse, "truncated PGM raster");
    }
    const uint8_t* data = bytes.data() + reader.pos();
    for (std::size_t i = 0; i < count; ++i) {
      const int v = bpp == 1 ? data[i] : (data[2 * i] << 8) | data[2 * i + 1];
      bits[i] = v * scale >= threshold ? 1 : 0;
    }
  }
  return BinaryMask(width, height, std::move(bits));
}

BinaryMask DecodePng(const std::vector<uint8_t>& bytes, int threshold) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kParse, std::string("PNG: ") + image.message);
  }
  // Composites any alpha onto black and converts colour to luminance.
  image.format = PNG_FORMAT_GRAY;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<uint8_t> gray(PNG_IMAGE_SIZE(image));
  const png_color black{0, 0, 0};
  if (!png_image_finish_read(&image, &black, gray.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kParse, "PNG: " + message);
  }
  gray.resize(static_cast<std::size_t>(width) * height);
  for (auto& v : gray) v = v >= threshold ? 1 : 0;
  return BinaryMask(width, height, std::move(gray));
}

std::vector<uint8_t> EncodePngRaw(int width, int height, int channels,
                                  const uint8_t* pixels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels, 0,
                                 nullptr)) {
    throw Error(ErrorCode::kIo, std::string("PNG encode: ") + image.message);
  }
  std::vector<uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels, 0,
                                 nullptr)) {
    throw Error(ErrorCode::kIo, std::string("PNG encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                    [](char a, char b) {
                      return std::tolower(static_cast<unsigned char>(a)) ==
                             std::tolower(static_cast<unsigned char>(b));
                    });
}

}  // namespace

BinaryMask DecodeMask(const std::vector<uint8_t>& bytes, int threshold) {
  static constexpr uint8_t kPngMagic[] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::equal(kPngMagic, kPngMagic + 4, bytes.begin())) {
    return DecodePng(bytes, threshold);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' &&
      (bytes[1] == '2' || bytes[1] == '5')) {
    return DecodePgm(bytes, threshold);
  }
  throw Error(ErrorCode::kParse, "unrecognised mask format (need PGM or PNG)");
}

BinaryMask ReadMask(const std::string& path, int threshold) {
  try {
    return DecodeMask(ReadFileBytes(path), threshold);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) {
      throw Error(ErrorCode::kParse, path + ": " + e.what());
    }
    throw;
  }
}

std::vector<uint8_t> EncodePgm(const BinaryMask& mask) {
  const std::string header = "P5\n" + std::to_string(mask.width()) + " " +
                             std::to_string(mask.height()) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + mask.bits().size());
  for (uint8_t b : mask.bits()) out.push_back(b ? 255 : 0);
  return out;
}

std::vector<uint8_t> EncodeMaskPng(const BinaryMask& mask) {
  std::vector<uint8_t> gray(mask.bits().size());
  for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.bits()[i] ? 255 : 0;
  return EncodePngRaw(mask.width(), mask.height(), 1, gray.data());
}

void WriteMask(const BinaryMask& mask, const std::string& path) {
  WriteFileBytes(path, EndsWith(path, ".png") ? EncodeMaskPng(mask)
                                              : EncodePgm(mask));
}

std::vector<uint8_t> EncodePng(const RgbImage& image) {
  return EncodePngRaw(image.width, image.height, 3, image.pixels.data());
}

void WritePng(const RgbImage& image, const std::string& path) {
  WriteFileBytes(path, EncodePng(image));
}

}  // namespace ccss
