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

#ifndef CCSS_DESCRIPTOR_H_
#define CCSS_DESCRIPTOR_H_

#include <cstddef>
#include <vector>

#include "ccss/contour.h"

namespace ccss {

// Curvature magnitudes at or below this are treated as sign-neutral.
inline constexpr double kCurvatureEpsilon = 1e-9;
inline constexpr double kDefaultConcavityThreshold = 0.007;
inline constexpr std::size_t kDefaultMaxRows = 256;

// Gaussian standard deviations (arc-length units) at which the silhouette is
// evolved. Row r of every scale-space image refers to sigmas[r].
struct ScaleSchedule {
  std::vector<double> sigmas;

  // sigmas = {1/samples, 2/samples, ..., rows/samples}.
  static ScaleSchedule Uniform(std::size_t samples, std::size_t rows);

  std::size_t size() const { return sigmas.size(); }
  // Throws kInvalidArgument unless sigmas[0] > 0 and strictly increasing.
  void Validate() const;

  friend bool operator==(const ScaleSchedule&, const ScaleSchedule&) = default;
};

enum class ExtremumKind { kMaximum, kMinimum };

const char* ExtremumKindName(ExtremumKind kind);

// One lobe at one scale: convexities (c > 0) are maxima, concavities minima.
struct ScalePoint {
  double x_deck = 0.0;
  std::size_t row = 0;
  double c = 0.0;
  ExtremumKind kind = ExtremumKind::kMaximum;

  friend bool operator==(const ScalePoint&, const ScalePoint&) = default;
};

struct CcssRow {
  std::vector<ScalePoint> max_points;  // sorted by x_deck
  std::vector<ScalePoint> min_points;  // sorted by x_deck

  std::size_t size() const { return max_points.size() + min_points.size(); }
  const std::vector<ScalePoint>& Family(ExtremumKind kind) const {
    return kind == ExtremumKind::kMaximum ? max_points : min_points;
  }
  friend bool operator==(const CcssRow&, const CcssRow&) = default;
};

struct CCSSImage {
  ScaleSchedule schedule;
  std::vector<CcssRow> rows;  // rows.size() == schedule.size()

  std::size_t PointCount() const;
  friend bool operator==(const CCSSImage&, const CCSSImage&) = default;
};

struct CssTracePoint {
  double u = 0.0;  // normalized arc position in [0, 1)
  std::size_t row = 0;
  double sigma = 0.0;
};

struct CSSImage {
  ScaleSchedule schedule;
  std::vector<CssTracePoint> points;
};

// A curvature sign change between sample `index` (last sample of the old
// sign) and sample `next` (first sample of the new sign), skipping any
// sign-neutral samples in between. `position` is the linearly interpolated
// zero in sample units, in [0, n).
struct ZeroCrossing {
  std::size_t index = 0;
  std::size_t next = 0;
  double position = 0.0;
  int sign_after = 0;  // +1 convex, -1 concave
};

// Crossings in increasing sample order. A closed curve always yields an even
// count; a profile with a single sign (or all neutral) yields none.
std::vector<ZeroCrossing> ZeroCrossings(const CurvatureProfile& profile,
                                        double eps = kCurvatureEpsilon);

struct Lobe {
  std::size_t peak_index = 0;
  double c = 0.0;  // signed distance, + for convexities
};

// The arc sample between consecutive crossings z0 and z1 that lies farthest
// from the chord through them, with that distance signed by the arc's
// curvature sign. Throws kDegenerateChord when the crossings coincide.
Lobe LobeConcavity(const NormalizedSilhouette& silhouette,
                   const ZeroCrossing& z0, const ZeroCrossing& z1);

// Point on the sampled curve at a fractional sample position.
Point2 InterpolateAt(const NormalizedSilhouette& silhouette, double position);

// One ScalePoint per lobe per row: evolve to each sigma, locate crossings,
// measure every lobe between consecutive crossings, and deck-project its
// peak against the unsmoothed deck span. Rows are evaluated in parallel; the
// result does not depend on the thread count.
CCSSImage BuildCcss(const NormalizedSilhouette& silhouette,
                    const ScaleSchedule& schedule,
                    double eps = kCurvatureEpsilon);

// Drops every point with |c| < tau; tau == 0 is the identity.
CCSSImage ThresholdShallow(const CCSSImage& image, double tau);

// Classic curvature scale space: zero-crossing arc positions per row.
CSSImage BuildCss(const NormalizedSilhouette& silhouette,
                  const ScaleSchedule& schedule,
                  double eps = kCurvatureEpsilon);

// Number of rows of the uniform schedule needed until the evolved silhouette
// first shows no zero crossing (that row included), capped at max_rows.
std::size_t RowsUntilConvex(const NormalizedSilhouette& silhouette,
                            std::size_t max_rows = kDefaultMaxRows,
                            double eps = kCurvatureEpsilon);

}  // namespace ccss

#endif  // CCSS_DESCRIPTOR_H_
