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

#include "ccss/render.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ccss/errors.h"

namespace ccss {

namespace {

constexpr int kPlotWidth = 640;
constexpr int kMargin = 24;
constexpr int kMinPlotHeight = 200;

struct Color {
  uint8_t r, g, b;
};
constexpr Color kAxis{40, 40, 40};
constexpr Color kMaxColor{200, 30, 30};
constexpr Color kMinColor{30, 60, 200};
constexpr Color kTraceColor{20, 20, 20};
constexpr Color kCurveColor{90, 90, 90};

void Line(RgbImage& img, int x0, int y0, int x1, int y1, Color c) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    img.Put(x0, y0, c.r, c.g, c.b);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void Marker(RgbImage& img, int x, int y, Color c) {
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) img.Put(x + dx, y + dy, c.r, c.g, c.b);
  }
}

void Frame(RgbImage& img) {
  const int x0 = kMargin - 1;
  const int y0 = kMargin - 1;
  const int x1 = img.width - kMargin;
  const int y1 = img.height - kMargin;
  Line(img, x0, y0, x1, y0, kAxis);
  Line(img, x1, y0, x1, y1, kAxis);
  Line(img, x1, y1, x0, y1, kAxis);
  Line(img, x0, y1, x0, y0, kAxis);
}

// Maps (position in [0, 1], row) into the plot area, row 0 at the bottom.
struct ScatterFrame {
  int width;
  int height;
  std::size_t rows;

  int X(double position) const {
    const double inner = width - 2 * kMargin - 1;
    return kMargin + static_cast<int>(std::lround(std::clamp(position, 0.0, 1.0) * inner));
  }
  int Y(std::size_t row) const {
    const double inner = height - 2 * kMargin - 1;
    const double t = rows > 1 ? static_cast<double>(row) / (rows - 1) : 0.0;
    return height - kMargin - 1 - static_cast<int>(std::lround(t * inner));
  }
};

ScatterFrame MakeFrame(std::size_t rows) {
  const int height =
      std::max(kMinPlotHeight, static_cast<int>(2 * rows) + 2 * kMargin);
  return {kPlotWidth, height, std::max<std::size_t>(rows, 1)};
}

}  // namespace

Rendering RenderCss(const CSSImage& css) {
  const ScatterFrame f = MakeFrame(css.schedule.size());
  Rendering out{RgbImage(f.width, f.height), 0};
  Frame(out.image);
  for (const CssTracePoint& p : css.points) {
    Marker(out.image, f.X(p.u), f.Y(p.row), kTraceColor);
    ++out.markers;
  }
  return out;
}

Rendering RenderCcss(const CCSSImage& ccss) {
  const ScatterFrame f = MakeFrame(ccss.schedule.size());
  Rendering out{RgbImage(f.width, f.height), 0};
  Frame(out.image);
  for (const CcssRow& row : ccss.rows) {
    for (const ScalePoint& p : row.max_points) {
      Marker(out.image, f.X(p.x_deck), f.Y(p.row), kMaxColor);
      ++out.markers;
    }
    for (const ScalePoint& p : row.min_points) {
      Marker(out.image, f.X(p.x_deck), f.Y(p.row), kMinColor);
      ++out.markers;
    }
  }
  return out;
}

std::array<std::size_t, 3> DefaultEvolutionRows(const ScaleSchedule& schedule) {
  const std::size_t n = schedule.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty schedule");
  return {std::min(n - 1, n / 8), std::min(n - 1, 3 * n / 8),
          std::min(n - 1, 3 * n / 4)};
}

Rendering RenderEvolution(const NormalizedSilhouette& silhouette,
                          const ScaleSchedule& schedule,
                          const std::array<std::size_t, 3>& rows) {
  schedule.Validate();
  const int panel_height = 220;
  Rendering out{RgbImage(kPlotWidth, 3 * panel_height), 0};
  // One scale for all panels so the shrinkage under smoothing stays visible.
  const double span_x = silhouette.deck_span.width();
  double y_min = silhouette.points[0].y;
  double y_max = y_min;
  for (const Point2& p : silhouette.points) {
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  const double scale =
      std::min((kPlotWidth - 2.0 * kMargin) / span_x,
               (panel_height - 2.0 * kMargin) / std::max(y_max - y_min, 1e-12));
  const double cx = 0.5 * (silhouette.deck_span.x_min + silhouette.deck_span.x_max);
  const double cy = 0.5 * (y_min + y_max);

  for (int panel = 0; panel < 3; ++panel) {
    const std::size_t row = std::min(rows[panel], schedule.size() - 1);
    const NormalizedSilhouette evolved =
        Smooth(silhouette, schedule.sigmas[row]);
    const int oy = panel * panel_height;
    auto px = [&](const Point2& p) {
      return static_cast<int>(std::lround(kPlotWidth / 2.0 + (p.x - cx) * scale));
    };
    auto py = [&](const Point2& p) {
      return oy + static_cast<int>(std::lround(panel_height / 2.0 + (p.y - cy) * scale));
    };
    const std::size_t n = evolved.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = evolved.points[i];
      const Point2& b = evolved.points[(i + 1) % n];
      Line(out.image, px(a), py(a), px(b), py(b), kCurveColor);
    }
    for (const ZeroCrossing& z : ZeroCrossings(Curvature(evolved))) {
      const Point2 p = InterpolateAt(evolved, z.position);
      Marker(out.image, px(p), py(p), z.sign_after > 0 ? kMaxColor : kMinColor);
      ++out.markers;
    }
    Line(out.image, 0, oy + panel_height - 1, kPlotWidth - 1,
         oy + panel_height - 1, kAxis);
  }
  return out;
}

}  // namespace ccss
