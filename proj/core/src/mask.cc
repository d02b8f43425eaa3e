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

#include "ccss/mask.h"

#include <algorithm>
#include <deque>
#include <utility>

#include "ccss/errors.h"

namespace ccss {

BinaryMask::BinaryMask(int width, int height)
    : BinaryMask(width, height,
                 std::vector<uint8_t>(static_cast<std::size_t>(
                                          std::max(width, 0)) *
                                          static_cast<std::size_t>(
                                              std::max(height, 0)),
                                      0)) {}

BinaryMask::BinaryMask(int width, int height, std::vector<uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "mask dimensions must be >= 1");
  }
  if (bits_.size() != static_cast<std::size_t>(width) *
                          static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bit count does not match width * height");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t BinaryMask::CountObjectPixels() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

bool BinaryMask::HasObject() const {
  return std::find(bits_.begin(), bits_.end(), 1) != bits_.end();
}

bool BinaryMask::IsSubsetOf(const BinaryMask& other) const {
  if (width_ != other.width_ || height_ != other.height_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

BinaryMask BinaryMask::MirroredHorizontally() const {
  BinaryMask out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.Set(width_ - 1 - x, y, Get(x, y));
  }
  return out;
}

namespace {

constexpr int kDx8[] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy8[] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDx4[] = {1, 0, -1, 0};
constexpr int kDy4[] = {0, 1, 0, -1};

}  // namespace

ComponentLabels LabelComponents(const BinaryMask& mask,
                                Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  ComponentLabels out;
  out.labels.assign(mask.bits().size(), 0);
  const int n_neighbors = connectivity == Connectivity::kEight ? 8 : 4;
  const int* dx = connectivity == Connectivity::kEight ? kDx8 : kDx4;
  const int* dy = connectivity == Connectivity::kEight ? kDy8 : kDy4;

  std::deque<int> queue;
  for (int start = 0; start < w * h; ++start) {
    if (!mask.bits()[start] || out.labels[start] != 0) continue;
    const int label = ++out.count;
    std::size_t size = 0;
    out.labels[start] = label;
    queue.push_back(start);
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      ++size;
      const int px = p % w;
      const int py = p / w;
      for (int k = 0; k < n_neighbors; ++k) {
        const int qx = px + dx[k];
        const int qy = py + dy[k];
        if (!mask.Get(qx, qy)) continue;
        const int q = qy * w + qx;
        if (out.labels[q] != 0) continue;
        out.labels[q] = label;
        queue.push_back(q);
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

int CountComponents(const BinaryMask& mask, Connectivity connectivity) {
  return LabelComponents(mask, connectivity).count;
}

int CountEnclosedHoles(const BinaryMask& mask) {
  BinaryMask background(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) background.Set(x, y, !mask.Get(x, y));
  }
  const ComponentLabels labels =
      LabelComponents(background, Connectivity::kFour);
  std::vector<bool> touches_border(labels.count + 1, false);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (x == 0 || y == 0 || x == mask.width() - 1 ||
          y == mask.height() - 1) {
        touches_border[labels.labels[y * mask.width() + x]] = true;
      }
    }
  }
  int holes = 0;
  for (int k = 1; k <= labels.count; ++k) {
    if (!touches_border[k]) ++holes;
  }
  return holes;
}

}  // namespace ccss
