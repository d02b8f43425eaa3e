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

#ifndef CCSS_IMAGE_IO_H_
#define CCSS_IMAGE_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ccss/mask.h"

namespace ccss {

inline constexpr int kDefaultMaskThreshold = 128;

// 8-bit RGB raster used by the renderers.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // width * height * 3, row-major

  RgbImage() = default;
  RgbImage(int w, int h, uint8_t fill = 255);

  void Put(int x, int y, uint8_t r, uint8_t g, uint8_t b);
};

// Decodes a PGM (P2 or P5) or PNG byte stream. Pixels with gray value
// >= threshold become object pixels. Colour PNGs are reduced to luminance.
BinaryMask DecodeMask(const std::vector<uint8_t>& bytes,
                      int threshold = kDefaultMaskThreshold);
BinaryMask ReadMask(const std::string& path,
                    int threshold = kDefaultMaskThreshold);

// Object pixels are written as 255, background as 0.
std::vector<uint8_t> EncodePgm(const BinaryMask& mask);
std::vector<uint8_t> EncodeMaskPng(const BinaryMask& mask);
void WriteMask(const BinaryMask& mask, const std::string& path);

std::vector<uint8_t> EncodePng(const RgbImage& image);
void WritePng(const RgbImage& image, const std::string& path);

std::vector<uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace ccss

#endif  // CCSS_IMAGE_IO_H_
