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

#ifndef CCSS_MORPHOLOGY_H_
#define CCSS_MORPHOLOGY_H_

#include <utility>
#include <vector>

#include "ccss/mask.h"

namespace ccss {

struct Offset {
  int dx = 0;
  int dy = 0;
};

// Flat binary kernel given as offsets from its origin. The origin (0, 0) is
// always part of the support.
class StructuringElement {
 public:
  // Digital disc {(dx, dy) : dx^2 + dy^2 <= radius^2}.
  static StructuringElement Disc(int radius);

  int radius() const { return radius_; }
  const std::vector<Offset>& offsets() const { return offsets_; }

 private:
  StructuringElement(int radius, std::vector<Offset> offsets)
      : radius_(radius), offsets_(std::move(offsets)) {}

  int radius_;
  std::vector<Offset> offsets_;
};

// Pixels outside the raster count as background for both operators.
BinaryMask Erode(const BinaryMask& mask, const StructuringElement& se);
BinaryMask Dilate(const BinaryMask& mask, const StructuringElement& se);

// Geodesic reconstruction by dilation of `marker` under `limit` with the 8-
// connected unit square, run to stability. `marker` must be a subset of
// `limit`.
BinaryMask ReconstructByDilation(const BinaryMask& marker,
                                 const BinaryMask& limit);

// Opening that removes thin protrusions without cutting the object apart.
//
// The classical opening (erosion then dilation) is computed first. Each
// 8-connected component of the removed residue is then put back when it
// either touches two or more components of the opening (it was a bridge, and
// dropping it would split the object into isolated regions), or lies entirely
// within one structuring-element reach of the opening (a corner chip rather
// than a protrusion). Residues that reach further out and hang off a single
// component, such as antennas, stay removed.
//
// Result is a subset of `mask`; the component count never increases.
// Throws kEmptyMask if `mask` has no object pixel.
BinaryMask OpeningWithReconstruction(const BinaryMask& mask,
                                     const StructuringElement& se);

// Dilation followed by erosion, computed on a raster padded by the kernel
// radius so that objects touching the border are not eroded away.
// Throws kEmptyMask if `mask` has no object pixel.
BinaryMask Closing(const BinaryMask& mask, const StructuringElement& se);

// Sets every pixel that is not 4-connected to the border through background.
BinaryMask FillHoles(const BinaryMask& mask);

// Largest 8-connected component; ties go to the component met first in
// raster order. Returns an all-background mask for an empty input.
BinaryMask LargestComponent(const BinaryMask& mask);

struct PreprocessParams {
  int opening_radius = 2;
  int closing_radius = 2;
};

// Opening with reconstruction, closing, hole filling, then the largest
// remaining component. Throws kEmptyMask when nothing survives.
BinaryMask Preprocess(const BinaryMask& mask, const PreprocessParams& params);

}  // namespace ccss

#endif  // CCSS_MORPHOLOGY_H_
