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

#ifndef CCSS_RENDER_H_
#define CCSS_RENDER_H_

#include <array>
#include <cstddef>

#include "ccss/contour.h"
#include "ccss/descriptor.h"
#include "ccss/image_io.h"

namespace ccss {

struct Rendering {
  RgbImage image;
  std::size_t markers = 0;  // plotted scale-space points
};

// Scatter of zero-crossing positions (x = arc position, y = row, small sigma
// at the bottom).
Rendering RenderCss(const CSSImage& css);

// Scatter of CCSS points (x = deck position, y = row); maxima in red, minima
// in blue.
Rendering RenderCcss(const CCSSImage& ccss);

// Three stacked panels showing the silhouette evolved to the given schedule
// rows, with the zero crossings of each stage marked.
Rendering RenderEvolution(const NormalizedSilhouette& silhouette,
                          const ScaleSchedule& schedule,
                          const std::array<std::size_t, 3>& rows);

// Rows at roughly 1/8, 3/8 and 3/4 of the schedule.
std::array<std::size_t, 3> DefaultEvolutionRows(const ScaleSchedule& schedule);

}  // namespace ccss

#endif  // CCSS_RENDER_H_
