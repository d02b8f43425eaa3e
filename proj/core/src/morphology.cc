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

#include "ccss/morphology.h"

#include <algorithm>
#include <deque>
#include <set>

#include "ccss/errors.h"

namespace ccss {

StructuringElement StructuringElement::Disc(int radius) {
  if (radius < 0) {
    throw Error(ErrorCode::kInvalidArgument, "disc radius must be >= 0");
  }
  std::vector<Offset> offsets;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) offsets.push_back({dx, dy});
    }
  }
  return StructuringElement(radius, std::move(offsets));
}

BinaryMask Erode(const BinaryMask& mask, const StructuringElement& se) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.Get(x, y)) continue;
      const bool fits = std::all_of(
          se.offsets().begin(), se.offsets().end(),
          [&](const Offset& o) { return mask.Get(x + o.dx, y + o.dy); });
      if (fits) out.Set(x, y, true);
    }
  }
  return out;
}

BinaryMask Dilate(const BinaryMask& mask, const StructuringElement& se) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.Get(x, y)) continue;
      for (const Offset& o : se.offsets()) {
        if (out.InBounds(x + o.dx, y + o.dy)) out.Set(x + o.dx, y + o.dy, true);
      }
    }
  }
  return out;
}

BinaryMask ReconstructByDilation(const BinaryMask& marker,
                                 const BinaryMask& limit) {
  if (!marker.IsSubsetOf(limit)) {
    throw Error(ErrorCode::kInvalidArgument,
                "reconstruction marker must lie inside the limit mask");
  }
  BinaryMask out = marker;
  std::deque<std::pair<int, int>> frontier;
  for (int y = 0; y < marker.height(); ++y) {
    for (int x = 0; x < marker.width(); ++x) {
      if (marker.Get(x, y)) frontier.emplace_back(x, y);
    }
  }
  while (!frontier.empty()) {
    const auto [x, y] = frontier.front();
    frontier.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int qx = x + dx;
        const int qy = y + dy;
        if (limit.Get(qx, qy) && !out.Get(qx, qy)) {
          out.Set(qx, qy, true);
          frontier.emplace_back(qx, qy);
        }
      }
    }
  }
  return out;
}

BinaryMask OpeningWithReconstruction(const BinaryMask& mask,
                                     const StructuringElement& se) {
  if (!mask.HasObject()) {
    throw Error(ErrorCode::kEmptyMask, "mask has no object pixel");
  }
  const int w = mask.width();
  const int h = mask.height();
  const BinaryMask opened = Dilate(Erode(mask, se), se);
  BinaryMask residue(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      residue.Set(x, y, mask.Get(x, y) && !opened.Get(x, y));
    }
  }
  const BinaryMask reach = Dilate(opened, se);
  const ComponentLabels opened_labels =
      LabelComponents(opened, Connectivity::kEight);
  const ComponentLabels residue_labels =
      LabelComponents(residue, Connectivity::kEight);

  std::vector<std::set<int>> touched(residue_labels.count + 1);
  std::vector<bool> within_reach(residue_labels.count + 1, true);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int r = residue_labels.labels[y * w + x];
      if (r == 0) continue;
      if (!reach.Get(x, y)) within_reach[r] = false;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!opened.Get(x + dx, y + dy)) continue;
          touched[r].insert(opened_labels.labels[(y + dy) * w + x + dx]);
        }
      }
    }
  }

  BinaryMask out = opened;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int r = residue_labels.labels[y * w + x];
      if (r == 0) continue;
      const std::size_t n = touched[r].size();
      if (n >= 2 || (n == 1 && within_reach[r])) out.Set(x, y, true);
    }
  }
  return out;
}

BinaryMask Closing(const BinaryMask& mask, const StructuringElement& se) {
  if (!mask.HasObject()) {
    throw Error(ErrorCode::kEmptyMask, "mask has no object pixel");
  }
  const int pad = se.radius() + 1;
  BinaryMask padded(mask.width() + 2 * pad, mask.height() + 2 * pad);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.Get(x, y)) padded.Set(x + pad, y + pad, true);
    }
  }
  const BinaryMask closed = Erode(Dilate(padded, se), se);
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      out.Set(x, y, closed.Get(x + pad, y + pad) || mask.Get(x, y));
    }
  }
  return out;
}

BinaryMask FillHoles(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<uint8_t> outside(static_cast<std::size_t>(w) * h, 0);
  std::deque<std::pair<int, int>> queue;
  auto seed = [&](int x, int y) {
    if (mask.Get(x, y) || outside[y * w + x]) return;
    outside[y * w + x] = 1;
    queue.emplace_back(x, y);
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  constexpr int kDx[] = {1, -1, 0, 0};
  constexpr int kDy[] = {0, 0, 1, -1};
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (int k = 0; k < 4; ++k) {
      const int qx = x + kDx[k];
      const int qy = y + kDy[k];
      if (mask.InBounds(qx, qy)) seed(qx, qy);
    }
  }
  std::vector<uint8_t> bits(outside.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = outside[i] ? 0 : 1;
  return BinaryMask(w, h, std::move(bits));
}

BinaryMask LargestComponent(const BinaryMask& mask) {
  const ComponentLabels labels = LabelComponents(mask, Connectivity::kEight);
  BinaryMask out(mask.width(), mask.height());
  if (labels.count == 0) return out;
  const auto best = std::max_element(labels.sizes.begin(), labels.sizes.end());
  const int keep = static_cast<int>(best - labels.sizes.begin()) + 1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (labels.labels[y * mask.width() + x] == keep) out.Set(x, y, true);
    }
  }
  return out;
}

BinaryMask Preprocess(const BinaryMask& mask, const PreprocessParams& params) {
  if (!mask.HasObject()) {
    throw Error(ErrorCode::kEmptyMask, "mask has no object pixel");
  }
  BinaryMask m = OpeningWithReconstruction(
      mask, StructuringElement::Disc(params.opening_radius));
  if (!m.HasObject()) {
    throw Error(ErrorCode::kEmptyMask,
                "opening removed the whole object; it is thinner than the "
                "structuring element everywhere");
  }
  m = Closing(m, StructuringElement::Disc(params.closing_radius));
  m = FillHoles(m);
  return LargestComponent(m);
}

}  // namespace ccss
