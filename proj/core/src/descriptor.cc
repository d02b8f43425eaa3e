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

#include "ccss/descriptor.h"

#include <algorithm>
#include <cmath>

#include "ccss/errors.h"
#include "ccss/parallel.h"

namespace ccss {

ScaleSchedule ScaleSchedule::Uniform(std::size_t samples, std::size_t rows) {
  if (samples == 0 || rows == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "schedule needs a sample count and at least one row");
  }
  ScaleSchedule s;
  s.sigmas.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    s.sigmas[r] = static_cast<double>(r + 1) / static_cast<double>(samples);
  }
  return s;
}

void ScaleSchedule::Validate() const {
  if (sigmas.empty() || !(sigmas.front() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "schedule must start above zero");
  }
  for (std::size_t i = 1; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > sigmas[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "schedule must be strictly increasing");
    }
  }
}

const char* ExtremumKindName(ExtremumKind kind) {
  return kind == ExtremumKind::kMaximum ? "max" : "min";
}

std::size_t CCSSImage::PointCount() const {
  std::size_t total = 0;
  for (const auto& row : rows) total += row.size();
  return total;
}

namespace {

int SignOf(double kappa, double eps) {
  if (kappa > eps) return 1;
  if (kappa < -eps) return -1;
  return 0;
}

}  // namespace

std::vector<ZeroCrossing> ZeroCrossings(const CurvatureProfile& profile,
                                        double eps) {
  const auto& k = profile.kappa;
  const std::size_t n = k.size();
  std::vector<ZeroCrossing> out;
  std::vector<std::size_t> signed_samples;
  for (std::size_t i = 0; i < n; ++i) {
    if (SignOf(k[i], eps) != 0) signed_samples.push_back(i);
  }
  const std::size_t m = signed_samples.size();
  if (m < 2) return out;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t a = signed_samples[j];
    const std::size_t b = signed_samples[(j + 1) % m];
    const int sa = SignOf(k[a], eps);
    const int sb = SignOf(k[b], eps);
    if (sa == sb) continue;
    const std::size_t gap = (b + n - a) % n;
    const double frac = k[a] / (k[a] - k[b]);
    double position = static_cast<double>(a) + frac * static_cast<double>(gap);
    if (position >= static_cast<double>(n)) position -= static_cast<double>(n);
    out.push_back({a, b, position, sb});
  }
  // The wrap-around pair is visited last but may lie before index 0's pair.
  std::sort(out.begin(), out.end(),
            [](const ZeroCrossing& l, const ZeroCrossing& r) {
              return l.index < r.index;
            });
  return out;
}

Point2 InterpolateAt(const NormalizedSilhouette& silhouette, double position) {
  const std::size_t n = silhouette.size();
  const double wrapped =
      std::fmod(std::fmod(position, static_cast<double>(n)) + n, n);
  const std::size_t i = static_cast<std::size_t>(std::floor(wrapped)) % n;
  const double t = wrapped - std::floor(wrapped);
  const Point2& a = silhouette.points[i];
  const Point2& b = silhouette.points[(i + 1) % n];
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

Lobe LobeConcavity(const NormalizedSilhouette& silhouette,
                   const ZeroCrossing& z0, const ZeroCrossing& z1) {
  const std::size_t n = silhouette.size();
  const Point2 a = InterpolateAt(silhouette, z0.position);
  const Point2 b = InterpolateAt(silhouette, z1.position);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double chord = std::hypot(dx, dy);
  if (!(chord > 1e-15)) {
    throw Error(ErrorCode::kDegenerateChord, "lobe crossings coincide");
  }
  Lobe lobe{z0.next, 0.0};
  double best = -1.0;
  const std::size_t count = (z1.index + n - z0.next) % n + 1;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t j = (z0.next + s) % n;
    const Point2& p = silhouette.points[j];
    const double d = std::abs(dx * (p.y - a.y) - dy * (p.x - a.x)) / chord;
    if (d > best) {
      best = d;
      lobe.peak_index = j;
    }
  }
  lobe.c = z0.sign_after >= 0 ? best : -best;
  return lobe;
}

namespace {

CcssRow BuildRow(const NormalizedSilhouette& silhouette, std::size_t row,
                 double sigma, double eps) {
  const NormalizedSilhouette evolved = Smooth(silhouette, sigma);
  const std::vector<ZeroCrossing> crossings =
      ZeroCrossings(Curvature(evolved), eps);
  CcssRow out;
  const std::size_t k = crossings.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Lobe lobe = LobeConcavity(evolved, crossings[i], crossings[(i + 1) % k]);
    ScalePoint p;
    p.x_deck = DeckProject(evolved, lobe.peak_index);
    p.row = row;
    p.c = lobe.c;
    p.kind = crossings[i].sign_after > 0 ? ExtremumKind::kMaximum
                                         : ExtremumKind::kMinimum;
    (p.kind == ExtremumKind::kMaximum ? out.max_points : out.min_points)
        .push_back(p);
  }
  auto by_x = [](const ScalePoint& l, const ScalePoint& r) {
    return l.x_deck < r.x_deck;
  };
  std::stable_sort(out.max_points.begin(), out.max_points.end(), by_x);
  std::stable_sort(out.min_points.begin(), out.min_points.end(), by_x);
  return out;
}

}  // namespace

CCSSImage BuildCcss(const NormalizedSilhouette& silhouette,
                    const ScaleSchedule& schedule, double eps) {
  schedule.Validate();
  CCSSImage image;
  image.schedule = schedule;
  image.rows.resize(schedule.size());
  ParallelFor(schedule.size(), [&](std::size_t r) {
    image.rows[r] = BuildRow(silhouette, r, schedule.sigmas[r], eps);
  });
  return image;
}

CCSSImage ThresholdShallow(const CCSSImage& image, double tau) {
  if (tau < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be >= 0");
  }
  CCSSImage out = image;
  auto shallow = [tau](const ScalePoint& p) { return std::abs(p.c) < tau; };
  for (auto& row : out.rows) {
    std::erase_if(row.max_points, shallow);
    std::erase_if(row.min_points, shallow);
  }
  return out;
}

CSSImage BuildCss(const NormalizedSilhouette& silhouette,
                  const ScaleSchedule& schedule, double eps) {
  schedule.Validate();
  const double n = static_cast<double>(silhouette.size());
  std::vector<std::vector<CssTracePoint>> per_row(schedule.size());
  ParallelFor(schedule.size(), [&](std::size_t r) {
    const NormalizedSilhouette evolved = Smooth(silhouette, schedule.sigmas[r]);
    for (const ZeroCrossing& z : ZeroCrossings(Curvature(evolved), eps)) {
      per_row[r].push_back({z.position / n, r, schedule.sigmas[r]});
    }
  });
  CSSImage image;
  image.schedule = schedule;
  for (auto& row : per_row) {
    image.points.insert(image.points.end(), row.begin(), row.end());
  }
  return image;
}

std::size_t RowsUntilConvex(const NormalizedSilhouette& silhouette,
                            std::size_t max_rows, double eps) {
  const double n = static_cast<double>(silhouette.size());
  for (std::size_t r = 0; r < max_rows; ++r) {
    const double sigma = static_cast<double>(r + 1) / n;
    if (ZeroCrossings(Curvature(Smooth(silhouette, sigma)), eps).empty()) {
      return r + 1;
    }
  }
  return max_rows;
}

}  // namespace ccss
