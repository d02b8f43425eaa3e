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

#ifndef CCSS_MASK_H_
#define CCSS_MASK_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ccss {

// Row-major binary raster. A value of 1 marks an object pixel.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return bits_.empty(); }

  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  // Out-of-bounds reads return background.
  bool Get(int x, int y) const {
    return InBounds(x, y) && bits_[Index(x, y)] != 0;
  }
  void Set(int x, int y, bool value) {
    bits_[Index(x, y)] = value ? 1 : 0;
  }

  const std::vector<uint8_t>& bits() const { return bits_; }
  std::size_t CountObjectPixels() const;
  bool HasObject() const;

  // True iff every object pixel of this mask is also set in `other`.
  bool IsSubsetOf(const BinaryMask& other) const;

  BinaryMask MirroredHorizontally() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bits_;
};

enum class Connectivity { kFour = 4, kEight = 8 };

// Component labelling: labels[i] is 0 for background, otherwise 1..count.
struct ComponentLabels {
  std::vector<int> labels;
  int count = 0;
  std::vector<std::size_t> sizes;  // sizes[k] is the pixel count of label k+1
};

ComponentLabels LabelComponents(const BinaryMask& mask,
                                Connectivity connectivity);
int CountComponents(const BinaryMask& mask, Connectivity connectivity);

// Number of 4-connected background regions that do not touch the border.
int CountEnclosedHoles(const BinaryMask& mask);

}  // namespace ccss

#endif  // CCSS_MASK_H_
