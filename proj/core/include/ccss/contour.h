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

#ifndef CCSS_CONTOUR_H_
#define CCSS_CONTOUR_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "ccss/mask.h"

namespace ccss {

// Pixel coordinates: x grows to the right, y grows downward (raster rows).
struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Closed 8-connected boundary loop. The last point neighbours the first; the
// loop is not closed by repeating the first point.
struct ClosedContour {
  std::vector<PixelPoint> points;
};

// Horizontal extent of the unsmoothed silhouette, in the silhouette's own
// normalized coordinates.
struct DeckSpan {
  double x_min = 0.0;
  double x_max = 0.0;
  double width() const { return x_max - x_min; }
};

// Closed curve sampled uniformly in arc length, scaled to unit perimeter.
//
// Orientation is positive (shoelace area > 0) in the raster frame, which puts
// convexities at positive curvature and makes the traversal from the stern
// (index 0) run along the deck to the bow before returning along the hull.
// Source pixel coordinates are recovered as origin + point * pixel_scale.
struct NormalizedSilhouette {
  std::vector<Point2> points;
  std::size_t bow_index = 0;
  std::size_t stern_index = 0;
  DeckSpan deck_span;
  Point2 origin;
  double pixel_scale = 1.0;

  std::size_t size() const { return points.size(); }
  Point2 ToPixels(std::size_t i) const {
    return {origin.x + points[i].x * pixel_scale,
            origin.y + points[i].y * pixel_scale};
  }
};

struct CurvatureProfile {
  std::vector<double> kappa;
};

inline constexpr std::size_t kDefaultSamples = 512;
inline constexpr std::size_t kMinSamples = 32;
inline constexpr std::size_t kMinContourPoints = 8;

// Moore-neighbour boundary following with backtracking, started at the first
// object pixel in raster order. Only the component containing that pixel is
// traced. Throws kDegenerateObject below kMinContourPoints boundary pixels and
// kEmptyMask for an empty mask.
ClosedContour ExtractContour(const BinaryMask& mask);

// Signed shoelace area of a closed polygon.
double SignedArea(const std::vector<Point2>& polygon);
double SignedArea(const ClosedContour& contour);

// Resamples to `n` points uniform in arc length along the contour polygon,
// fixes orientation, rotates index 0 to the stern and scales the result to a
// closed perimeter of exactly 1.
NormalizedSilhouette Resample(const ClosedContour& contour,
                              std::size_t n = kDefaultSamples);

// Stern = minimal x, bow = maximal x, ties to the lowest index.
// Throws kDegenerateSilhouette for zero horizontal extent.
std::pair<std::size_t, std::size_t> DetectBowStern(
    const NormalizedSilhouette& silhouette);

// Circular convolution of x(u) and y(u) with a Gaussian of standard deviation
// `sigma` (arc-length units), truncated at 4 sigma and renormalized to unit
// mass. The result keeps the input's parameterization, deck span and indices.
NormalizedSilhouette Smooth(const NormalizedSilhouette& silhouette,
                            double sigma);

// Truncated, renormalized Gaussian wrapped onto a circle of `n` samples;
// weights[k] multiplies the sample at offset k (mod n).
std::vector<double> WrappedGaussianKernel(std::size_t n, double sigma_samples);

// Signed curvature by circular central differences.
// Throws kSingularPoint where the squared speed falls below 1e-12.
CurvatureProfile Curvature(const NormalizedSilhouette& silhouette);

// (x - x_min) / (x_max - x_min) against the unsmoothed deck span, clamped to
// [0, 1]. Throws kDegenerateSilhouette for a zero-width span.
double DeckProject(const NormalizedSilhouette& silhouette,
                   std::size_t sample_index);

// Mirror image about a vertical axis. Sample positions are preserved; order is
// reversed to keep the orientation and rotated so index 0 is the new stern.
NormalizedSilhouette MirrorHorizontally(const NormalizedSilhouette& silhouette);

}  // namespace ccss

#endif  // CCSS_CONTOUR_H_
