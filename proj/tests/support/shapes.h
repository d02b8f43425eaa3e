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

#ifndef CCSS_TESTS_SUPPORT_SHAPES_H_
#define CCSS_TESTS_SUPPORT_SHAPES_H_

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <ostream>
#include <vector>

#include "ccss/contour.h"
#include "ccss/mask.h"

namespace ccss {

// gtest printer: draws the raster so mismatches are readable.
inline void PrintTo(const BinaryMask& m, std::ostream* os) {
  *os << m.width() << "x" << m.height() << "\n";
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) *os << (m.Get(x, y) ? '#' : '.');
    *os << "\n";
  }
}

}  // namespace ccss

namespace ccss::testing {

inline BinaryMask FilledRect(int width, int height, int x0, int y0, int w,
                             int h) {
  BinaryMask m(width, height);
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) m.Set(x, y, true);
  }
  return m;
}

inline void Fill(BinaryMask& m, int x0, int y0, int w, int h, bool value) {
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) m.Set(x, y, value);
  }
}

inline BinaryMask FilledDisc(int width, int height, double cx, double cy,
                             double r) {
  BinaryMask m(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.Set(x, y, true);
    }
  }
  return m;
}

// Samples a smooth closed curve p(t), t in [0, 1), uniformly in arc length
// and scales it to unit perimeter about its centroid, mimicking what
// Resample produces from a pixel contour. The curve must run with positive
// signed area in the y-down frame.
inline NormalizedSilhouette UniformClosedCurve(
    const std::function<Point2(double)>& p, std::size_t n,
    std::size_t dense = 200000) {
  std::vector<Point2> fine(dense);
  std::vector<double> s(dense + 1, 0.0);
  for (std::size_t i = 0; i < dense; ++i) {
    fine[i] = p(static_cast<double>(i) / static_cast<double>(dense));
  }
  for (std::size_t i = 0; i < dense; ++i) {
    const Point2& a = fine[i];
    const Point2& b = fine[(i + 1) % dense];
    s[i + 1] = s[i] + std::hypot(b.x - a.x, b.y - a.y);
  }
  const double total = s[dense];
  NormalizedSilhouette out;
  out.points.resize(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n);
    while (s[j + 1] < target) ++j;
    const double f = (target - s[j]) / (s[j + 1] - s[j]);
    const Point2& a = fine[j];
    const Point2& b = fine[(j + 1) % dense];
    out.points[k] = {(a.x + f * (b.x - a.x)) / total,
                     (a.y + f * (b.y - a.y)) / total};
  }
  double cx = 0.0, cy = 0.0;
  for (const Point2& q : out.points) {
    cx += q.x;
    cy += q.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  double xmin = 1e300, xmax = -1e300;
  for (Point2& q : out.points) {
    q.x -= cx;
    q.y -= cy;
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
  }
  out.deck_span = {xmin, xmax};
  out.pixel_scale = total;
  return out;
}

// Ellipse with semi-axes a (horizontal) and b, traversed with positive
// signed area in the y-down frame.
inline NormalizedSilhouette Ellipse(double a, double b, std::size_t n) {
  return UniformClosedCurve(
      [a, b](double t) {
        const double th = 2.0 * std::numbers::pi * t;
        return Point2{-a * std::cos(th), -b * std::sin(th)};
      },
      n);
}

inline NormalizedSilhouette Circle(std::size_t n) { return Ellipse(1.0, 1.0, n); }

}  // namespace ccss::testing

#endif  // CCSS_TESTS_SUPPORT_SHAPES_H_
