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

#include "ccss/contour.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>

#include "ccss/errors.h"

namespace ccss {

namespace {

// Clockwise order on screen (y down), starting at west.
constexpr PixelPoint kMoore[8] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1},
                                  {1, 0},  {1, 1},   {0, 1},  {-1, 1}};

int DirectionOf(const PixelPoint& from, const PixelPoint& to) {
  for (int d = 0; d < 8; ++d) {
    if (from.x + kMoore[d].x == to.x && from.y + kMoore[d].y == to.y) return d;
  }
  return -1;
}

}  // namespace

ClosedContour ExtractContour(const BinaryMask& mask) {
  PixelPoint start{-1, -1};
  for (int y = 0; y < mask.height() && start.x < 0; ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.Get(x, y)) {
        start = {x, y};
        break;
      }
    }
  }
  if (start.x < 0) throw Error(ErrorCode::kEmptyMask, "mask has no object pixel");

  ClosedContour contour;
  contour.points.push_back(start);
  PixelPoint current = start;
  PixelPoint backtrack{start.x - 1, start.y};
  PixelPoint first_move{-1, -1};
  // Each boundary pixel can be entered at most 4 times (once per side).
  const std::size_t limit = 4 * mask.bits().size() + 8;
  for (std::size_t step = 0; step < limit; ++step) {
    const int b = DirectionOf(current, backtrack);
    PixelPoint next{-1, -1};
    PixelPoint previous = backtrack;
    for (int k = 1; k <= 8; ++k) {
      const PixelPoint& d = kMoore[(b + k) % 8];
      const PixelPoint candidate{current.x + d.x, current.y + d.y};
      if (mask.Get(candidate.x, candidate.y)) {
        next = candidate;
        break;
      }
      previous = candidate;
    }
    if (next.x < 0) break;  // isolated pixel
    if (first_move.x < 0) {
      first_move = next;
    } else if (current == start && next == first_move) {
      break;
    }
    backtrack = previous;
    current = next;
    contour.points.push_back(current);
  }
  // The loop re-enters the start pixel before detecting closure.
  if (contour.points.size() > 1 && contour.points.back() == start) {
    contour.points.pop_back();
  }
  if (contour.points.size() < kMinContourPoints) {
    throw Error(ErrorCode::kDegenerateObject,
                "object boundary has fewer than 8 pixels");
  }
  return contour;
}

double SignedArea(const std::vector<Point2>& polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double SignedArea(const ClosedContour& contour) {
  std::vector<Point2> polygon;
  polygon.reserve(contour.points.size());
  for (const auto& p : contour.points) polygon.push_back({double(p.x), double(p.y)});
  return SignedArea(polygon);
}

namespace {

std::vector<Point2> RotateToStern(std::vector<Point2> points) {
  std::size_t stern = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].x < points[stern].x) stern = i;
  }
  std::rotate(points.begin(), points.begin() + static_cast<long>(stern),
              points.end());
  return points;
}

void FinishSilhouette(NormalizedSilhouette& s) {
  const auto [bow, stern] = DetectBowStern(s);
  s.bow_index = bow;
  s.stern_index = stern;
  s.deck_span = {s.points[stern].x, s.points[bow].x};
}

}  // namespace

NormalizedSilhouette Resample(const ClosedContour& contour, std::size_t n) {
  if (n < kMinSamples) {
    throw Error(ErrorCode::kInvalidArgument, "at least 32 samples required");
  }
  if (contour.points.size() < 3) {
    throw Error(ErrorCode::kDegenerateObject, "contour has fewer than 3 points");
  }
  std::vector<Point2> poly;
  poly.reserve(contour.points.size());
  for (const auto& p : contour.points) poly.push_back({double(p.x), double(p.y)});
  if (SignedArea(poly) < 0.0) std::reverse(poly.begin(), poly.end());

  const std::size_t m = poly.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % m];
    cumulative[i + 1] = cumulative[i] + std::hypot(b.x - a.x, b.y - a.y);
  }
  const double length = cumulative[m];

  std::vector<Point2> samples(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = length * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < m && cumulative[seg + 1] <= s) ++seg;
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    const double t = seg_len > 0.0 ? (s - cumulative[seg]) / seg_len : 0.0;
    const Point2& a = poly[seg];
    const Point2& b = poly[(seg + 1) % m];
    samples[k] = {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }

  double perimeter = 0.0;
  Point2 centroid;
  for (std::size_t k = 0; k < n; ++k) {
    const Point2& a = samples[k];
    const Point2& b = samples[(k + 1) % n];
    perimeter += std::hypot(b.x - a.x, b.y - a.y);
    centroid.x += a.x;
    centroid.y += a.y;
  }
  centroid.x /= static_cast<double>(n);
  centroid.y /= static_cast<double>(n);

  NormalizedSilhouette out;
  out.origin = centroid;
  out.pixel_scale = perimeter;
  out.points.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.points[k] = {(samples[k].x - centroid.x) / perimeter,
                     (samples[k].y - centroid.y) / perimeter};
  }
  out.points = RotateToStern(std::move(out.points));
  FinishSilhouette(out);
  return out;
}

std::pair<std::size_t, std::size_t> DetectBowStern(
    const NormalizedSilhouette& silhouette) {
  const auto& pts = silhouette.points;
  if (pts.empty()) {
    throw Error(ErrorCode::kDegenerateSilhouette, "silhouette has no samples");
  }
  std::size_t bow = 0;
  std::size_t stern = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x > pts[bow].x) bow = i;
    if (pts[i].x < pts[stern].x) stern = i;
  }
  if (!(pts[bow].x > pts[stern].x)) {
    throw Error(ErrorCode::kDegenerateSilhouette, "zero horizontal extent");
  }
  return {bow, stern};
}

std::vector<double> WrappedGaussianKernel(std::size_t n, double sigma_samples) {
  std::vector<double> weights(n, 0.0);
  if (sigma_samples <= 0.0) {
    weights[0] = 1.0;
    return weights;
  }
  const long half = static_cast<long>(std::ceil(4.0 * sigma_samples));
  double mass = 0.0;
  std::vector<double> g(static_cast<std::size_t>(2 * half + 1));
  for (long k = -half; k <= half; ++k) {
    const double v = std::exp(-0.5 * (k * k) / (sigma_samples * sigma_samples));
    g[static_cast<std::size_t>(k + half)] = v;
    mass += v;
  }
  const long ln = static_cast<long>(n);
  for (long k = -half; k <= half; ++k) {
    const long idx = ((k % ln) + ln) % ln;
    weights[static_cast<std::size_t>(idx)] +=
        g[static_cast<std::size_t>(k + half)] / mass;
  }
  return weights;
}

namespace {

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer AllocComplex(std::size_t n) {
  return FftwBuffer(fftw_alloc_complex(n));
}

// Plans are created once per size under a lock (the FFTW planner is not
// thread-safe); fftw_execute_dft on caller buffers is.
class FftPlans {
 public:
  struct Pair {
    fftw_plan forward;
    fftw_plan backward;
  };

  static const Pair& For(std::size_t n) {
    static FftPlans instance;
    std::lock_guard<std::mutex> lock(instance.mutex_);
    auto it = instance.plans_.find(n);
    if (it != instance.plans_.end()) return it->second;
    FftwBuffer a = AllocComplex(n);
    FftwBuffer b = AllocComplex(n);
    const int size = static_cast<int>(n);
    Pair pair{fftw_plan_dft_1d(size, a.get(), b.get(), FFTW_FORWARD,
                               FFTW_ESTIMATE),
              fftw_plan_dft_1d(size, a.get(), b.get(), FFTW_BACKWARD,
                               FFTW_ESTIMATE)};
    return instance.plans_.emplace(n, pair).first->second;
  }

 private:
  ~FftPlans() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  std::mutex mutex_;
  std::map<std::size_t, Pair> plans_;
};

}  // namespace

NormalizedSilhouette Smooth(const NormalizedSilhouette& silhouette,
                            double sigma) {
  if (sigma < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
  }
  if (sigma == 0.0) return silhouette;
  const std::size_t n = silhouette.size();
  const auto& plans = FftPlans::For(n);
  const std::vector<double> kernel =
      WrappedGaussianKernel(n, sigma * static_cast<double>(n));

  FftwBuffer curve = AllocComplex(n);
  FftwBuffer curve_hat = AllocComplex(n);
  FftwBuffer kern = AllocComplex(n);
  FftwBuffer kern_hat = AllocComplex(n);
  for (std::size_t i = 0; i < n; ++i) {
    curve[i][0] = silhouette.points[i].x;
    curve[i][1] = silhouette.points[i].y;
    kern[i][0] = kernel[i];
    kern[i][1] = 0.0;
  }
  fftw_execute_dft(plans.forward, curve.get(), curve_hat.get());
  fftw_execute_dft(plans.forward, kern.get(), kern_hat.get());
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> z(curve_hat[i][0], curve_hat[i][1]);
    const std::complex<double> k(kern_hat[i][0], kern_hat[i][1]);
    const std::complex<double> p = z * k;
    curve_hat[i][0] = p.real();
    curve_hat[i][1] = p.imag();
  }
  fftw_execute_dft(plans.backward, curve_hat.get(), curve.get());

  NormalizedSilhouette out = silhouette;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.points[i] = {curve[i][0] * inv_n, curve[i][1] * inv_n};
  }
  return out;
}

CurvatureProfile Curvature(const NormalizedSilhouette& silhouette) {
  const std::size_t n = silhouette.size();
  if (n < kMinSamples) {
    throw Error(ErrorCode::kInvalidArgument,
                "curvature needs at least 32 samples");
  }
  const double h = 1.0 / static_cast<double>(n);
  CurvatureProfile profile;
  profile.kappa.resize(n);
  const auto& p = silhouette.points;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& prev = p[(i + n - 1) % n];
    const Point2& cur = p[i];
    const Point2& next = p[(i + 1) % n];
    const double dx = (next.x - prev.x) / (2.0 * h);
    const double dy = (next.y - prev.y) / (2.0 * h);
    const double ddx = (next.x - 2.0 * cur.x + prev.x) / (h * h);
    const double ddy = (next.y - 2.0 * cur.y + prev.y) / (h * h);
    const double speed2 = dx * dx + dy * dy;
    if (speed2 < 1e-12) {
      throw Error(ErrorCode::kSingularPoint,
                  "vanishing tangent at sample " + std::to_string(i));
    }
    profile.kappa[i] = (dx * ddy - dy * ddx) / std::pow(speed2, 1.5);
  }
  return profile;
}

double DeckProject(const NormalizedSilhouette& silhouette,
                   std::size_t sample_index) {
  const double width = silhouette.deck_span.width();
  if (!(width > 0.0)) {
    throw Error(ErrorCode::kDegenerateSilhouette, "deck span has zero width");
  }
  const double v =
      (silhouette.points.at(sample_index).x - silhouette.deck_span.x_min) /
      width;
  return std::clamp(v, 0.0, 1.0);
}

NormalizedSilhouette MirrorHorizontally(const NormalizedSilhouette& silhouette) {
  const std::size_t n = silhouette.size();
  NormalizedSilhouette out;
  out.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Point2& p = silhouette.points[(n - j) % n];
    out.points[j] = {-p.x, p.y};
  }
  out.points = RotateToStern(std::move(out.points));
  out.origin = {-silhouette.origin.x, silhouette.origin.y};
  out.pixel_scale = silhouette.pixel_scale;
  FinishSilhouette(out);
  return out;
}

}  // namespace ccss
