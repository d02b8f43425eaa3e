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
#include <numbers>

#include <gtest/gtest.h>

#include "ccss/database.h"
#include "ccss/errors.h"
#include "ccss/synth.h"
#include "support/oracles.h"
#include "support/shapes.h"

namespace ccss {
namespace {

using testing::Fill;
using testing::FilledRect;

// A long box with one rectangular notch cut into its top edge.
BinaryMask NotchHull() {
  BinaryMask m = FilledRect(280, 100, 20, 30, 240, 40);
  Fill(m, 130, 30, 20, 12, false);
  return m;
}

// Notch columns expressed as deck positions of the box.
constexpr double kNotchLo = (130.0 - 20.0) / 239.0;
constexpr double kNotchHi = (149.0 - 20.0) / 239.0;

std::size_t CrossingCount(const NormalizedSilhouette& s, double sigma) {
  return ZeroCrossings(Curvature(Smooth(s, sigma))).size();
}

TEST(ScheduleTest, UniformAndValidate) {
  const ScaleSchedule s = ScaleSchedule::Uniform(512, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s.sigmas[0], 1.0 / 512);
  EXPECT_DOUBLE_EQ(s.sigmas[3], 4.0 / 512);
  EXPECT_NO_THROW(s.Validate());
  EXPECT_THROW((ScaleSchedule{{0.0, 0.1}}.Validate()), Error);
  EXPECT_THROW((ScaleSchedule{{0.2, 0.1}}.Validate()), Error);
  EXPECT_THROW((ScaleSchedule{{}}.Validate()), Error);
}

TEST(ZeroCrossingsTest, HandMadeProfile) {
  const CurvatureProfile p{{1.0, 3.0, -1.0, -1.0, 0.0, 1.0}};
  const std::vector<ZeroCrossing> z = ZeroCrossings(p);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0].index, 1u);
  EXPECT_EQ(z[0].next, 2u);
  EXPECT_DOUBLE_EQ(z[0].position, 1.75);
  EXPECT_EQ(z[0].sign_after, -1);
  // The zero sample is neutral: the change is between samples 3 and 5.
  EXPECT_EQ(z[1].index, 3u);
  EXPECT_EQ(z[1].next, 5u);
  EXPECT_DOUBLE_EQ(z[1].position, 4.0);
  EXPECT_EQ(z[1].sign_after, 1);
}

TEST(ZeroCrossingsTest, WrapAroundPair) {
  const CurvatureProfile p{{-1.0, 1.0, 1.0, 1.0, -1.0}};
  const std::vector<ZeroCrossing> z = ZeroCrossings(p);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0].index, 0u);
  EXPECT_EQ(z[1].index, 3u);
  EXPECT_EQ(ZeroCrossings(CurvatureProfile{{0.0, 0.0, 0.0}}).size(), 0u);
  EXPECT_EQ(ZeroCrossings(CurvatureProfile{{1e-12, -1e-12}}).size(), 0u);
}

TEST(ZeroCrossingsTest, ConvexShapesHaveNone) {
  EXPECT_TRUE(ZeroCrossings(Curvature(testing::Circle(512))).empty());
  const NormalizedSilhouette rect =
      SilhouetteFromMask(FilledRect(200, 100, 20, 20, 160, 60), {});
  EXPECT_EQ(CrossingCount(rect, 4.0 / 512), 0u);
}

TEST(ZeroCrossingsTest, NotchGivesTwoCrossingsAcrossIt) {
  const NormalizedSilhouette s = SilhouetteFromMask(NotchHull(), {});
  const NormalizedSilhouette evolved = Smooth(s, 3.0 / 512);
  const CurvatureProfile k = Curvature(evolved);
  const std::vector<ZeroCrossing> z = ZeroCrossings(k);
  EXPECT_EQ(z.size(), oracle::SignScanCount(k.kappa, kCurvatureEpsilon));
  std::size_t in_notch = 0;
  for (const ZeroCrossing& c : z) {
    const double x = DeckProject(evolved, c.next);
    in_notch += x > kNotchLo - 0.02 && x < kNotchHi + 0.02;
  }
  EXPECT_EQ(in_notch, 2u);
  EXPECT_EQ(z.size() % 2, 0u);
}

TEST(ZeroCrossingsTest, MatchSignScanOnCorpus) {
  for (const auto& model : synth::GenerateCorpus(6, 31)) {
    const NormalizedSilhouette s = SilhouetteFromMask(model.mask, {});
    for (double sigma : {1.0 / 512, 4.0 / 512, 16.0 / 512}) {
      const CurvatureProfile k = Curvature(Smooth(s, sigma));
      const std::vector<ZeroCrossing> z = ZeroCrossings(k);
      EXPECT_EQ(z.size(), oracle::SignScanCount(k.kappa, kCurvatureEpsilon));
      EXPECT_EQ(z.size() % 2, 0u);
      for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        EXPECT_LT(z[i].index, z[i + 1].index);
        EXPECT_NE(z[i].sign_after, z[i + 1].sign_after);
      }
    }
  }
}

// Closed curve: a semicircle of radius r over a flat base of length 2r.
NormalizedSilhouette SemicircleLobe(std::size_t arc_samples, double r) {
  NormalizedSilhouette s;
  for (std::size_t i = 0; i <= arc_samples; ++i) {
    const double th = std::numbers::pi * i / arc_samples;
    s.points.push_back({-r * std::cos(th), -r * std::sin(th)});
  }
  for (std::size_t i = 1; i < arc_samples; ++i) {
    s.points.push_back({r - 2.0 * r * i / arc_samples, 0.0});
  }
  return s;
}

TEST(LobeConcavityTest, SemicircleSagittaIsRadius) {
  const std::size_t m = 64;
  const double r = 0.1;
  const NormalizedSilhouette s = SemicircleLobe(m, r);
  const std::size_t n = s.size();
  const ZeroCrossing z0{n - 1, 0, 0.0, 1};
  const ZeroCrossing z1{m, m + 1, static_cast<double>(m), -1};
  const Lobe lobe = LobeConcavity(s, z0, z1);
  EXPECT_EQ(lobe.peak_index, m / 2);
  EXPECT_NEAR(lobe.c, r, 1e-15);
  // Same arc read as a concavity flips the sign only.
  const Lobe concave = LobeConcavity(s, {n - 1, 0, 0.0, -1}, z1);
  EXPECT_NEAR(concave.c, -r, 1e-15);
}

TEST(LobeConcavityTest, FlatArcIsZero) {
  const NormalizedSilhouette s = SemicircleLobe(64, 0.1);
  const std::size_t n = s.size();
  // The base runs from sample 64 back to sample 0.
  const Lobe lobe = LobeConcavity(s, {63, 64, 64.0, 1}, {n - 1, 0, 0.0, -1});
  EXPECT_NEAR(lobe.c, 0.0, 1e-15);
}

TEST(LobeConcavityTest, VNotchDepthMatchesExhaustiveScan) {
  for (double depth : {0.01, 0.03, 0.07}) {
    NormalizedSilhouette s;
    const std::size_t half = 40;
    const double len = 0.2;
    for (std::size_t i = 0; i <= 2 * half; ++i) {
      const double x = len * i / (2.0 * half);
      const double y = depth * (1.0 - std::abs(1.0 - static_cast<double>(i) / half));
      s.points.push_back({x, y});
    }
    for (std::size_t i = 1; i < 30; ++i) {
      s.points.push_back({len - len * i / 30.0, -0.05});
    }
    const std::size_t n = s.size();
    const ZeroCrossing z0{n - 1, 0, 0.0, -1};
    const ZeroCrossing z1{2 * half, 2 * half + 1, 2.0 * half, 1};
    const Lobe lobe = LobeConcavity(s, z0, z1);
    double best = 0.0;
    for (std::size_t i = 0; i <= 2 * half; ++i) {
      best = std::max(best, oracle::PointLineDistance(s.points[i], s.points[0],
                                                      s.points[2 * half]));
    }
    EXPECT_NEAR(lobe.c, -best, 1e-15);
    EXPECT_NEAR(-lobe.c, depth, len / (2.0 * half));
  }
}

TEST(LobeConcavityTest, CoincidentCrossingsAreAnError) {
  const NormalizedSilhouette s = SemicircleLobe(16, 0.1);
  try {
    LobeConcavity(s, {3, 4, 3.5, 1}, {3, 4, 3.5, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateChord);
  }
}

TEST(BuildCcssTest, CircleIsEmpty) {
  const CCSSImage img =
      BuildCcss(testing::Circle(512), ScaleSchedule::Uniform(512, 20));
  EXPECT_EQ(img.rows.size(), 20u);
  EXPECT_EQ(img.PointCount(), 0u);
}

TEST(BuildCcssTest, NotchTracedUntilItVanishes) {
  const NormalizedSilhouette s = SilhouetteFromMask(NotchHull(), {});
  const std::size_t rows = RowsUntilConvex(s);
  ASSERT_GT(rows, 3u);
  ASSERT_LT(rows, kDefaultMaxRows);
  const CCSSImage img = BuildCcss(s, ScaleSchedule::Uniform(512, rows + 5));
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    const CcssRow& row = img.rows[r];
    ASSERT_EQ(row.min_points.size(), 1u) << "row " << r;
    EXPECT_GT(row.min_points[0].x_deck, kNotchLo - 0.02);
    EXPECT_LT(row.min_points[0].x_deck, kNotchHi + 0.02);
    EXPECT_LT(row.min_points[0].c, 0.0);
  }
  for (std::size_t r = rows - 1; r < img.rows.size(); ++r) {
    EXPECT_EQ(img.rows[r].size(), 0u) << "row " << r;
  }
  // Row content equals composing the single-row operations.
  for (std::size_t r : {std::size_t{0}, rows / 2}) {
    const NormalizedSilhouette e = Smooth(s, img.schedule.sigmas[r]);
    const std::vector<ZeroCrossing> z = ZeroCrossings(Curvature(e));
    ASSERT_EQ(z.size(), 2u);
    const Lobe notch = z[0].sign_after < 0 ? LobeConcavity(e, z[0], z[1])
                                           : LobeConcavity(e, z[1], z[0]);
    EXPECT_EQ(img.rows[r].min_points[0].c, notch.c);
    EXPECT_EQ(img.rows[r].min_points[0].x_deck, DeckProject(e, notch.peak_index));
  }
}

TEST(BuildCcssTest, FamilyCountsAreHalfTheCrossings) {
  for (const auto& model : synth::GenerateCorpus(5, 8)) {
    const NormalizedSilhouette s = SilhouetteFromMask(model.mask, {});
    const ScaleSchedule schedule = ScaleSchedule::Uniform(512, 40);
    const CCSSImage img = BuildCcss(s, schedule);
    for (std::size_t r = 0; r < schedule.size(); r += 7) {
      const std::size_t k = CrossingCount(s, schedule.sigmas[r]);
      EXPECT_EQ(img.rows[r].max_points.size(), k / 2);
      EXPECT_EQ(img.rows[r].min_points.size(), k / 2);
    }
    for (const CcssRow& row : img.rows) {
      for (const ScalePoint& p : row.max_points) {
        EXPECT_GT(p.c, 0.0);
        EXPECT_EQ(p.kind, ExtremumKind::kMaximum);
        EXPECT_GE(p.x_deck, 0.0);
        EXPECT_LE(p.x_deck, 1.0);
      }
      for (const ScalePoint& p : row.min_points) {
        EXPECT_LT(p.c, 0.0);
        EXPECT_EQ(p.kind, ExtremumKind::kMinimum);
      }
      EXPECT_TRUE(std::is_sorted(
          row.max_points.begin(), row.max_points.end(),
          [](const ScalePoint& a, const ScalePoint& b) { return a.x_deck < b.x_deck; }));
    }
  }
}

TEST(BuildCcssTest, ShallowStepOnlyAddsLowConcavityPoints) {
  const auto [plain, stepped] = synth::ShallowStepPair(4);
  const NormalizedSilhouette a = SilhouetteFromMask(synth::RasterizeHull(plain), {});
  const NormalizedSilhouette b =
      SilhouetteFromMask(synth::RasterizeHull(stepped), {});
  const std::size_t rows = std::max(RowsUntilConvex(a), RowsUntilConvex(b));
  const ScaleSchedule schedule = ScaleSchedule::Uniform(512, rows);
  const CCSSImage ia = BuildCcss(a, schedule);
  const CCSSImage ib = BuildCcss(b, schedule);
  std::size_t raw_differ = 0, filtered_same = 0;
  const CCSSImage fa = ThresholdShallow(ia, kDefaultConcavityThreshold);
  const CCSSImage fb = ThresholdShallow(ib, kDefaultConcavityThreshold);
  for (std::size_t r = 0; r < rows; ++r) {
    raw_differ += ia.rows[r].size() != ib.rows[r].size();
    filtered_same += fa.rows[r].size() == fb.rows[r].size();
  }
  EXPECT_GE(raw_differ, rows / 10);
  EXPECT_GE(filtered_same, static_cast<std::size_t>(std::ceil(0.95 * rows)));
}

TEST(ThresholdTest, IdentityEmptyIdempotentMonotone) {
  const NormalizedSilhouette s =
      SilhouetteFromMask(synth::GenerateCorpus(1, 12)[0].mask, {});
  const CCSSImage img = BuildCcss(s, ScaleSchedule::Uniform(512, 60));
  ASSERT_GT(img.PointCount(), 0u);
  EXPECT_EQ(ThresholdShallow(img, 0.0), img);
  EXPECT_EQ(ThresholdShallow(img, 10.0).PointCount(), 0u);
  EXPECT_EQ(ThresholdShallow(img, 10.0).rows.size(), img.rows.size());
  EXPECT_THROW(ThresholdShallow(img, -1.0), Error);
  double prev_count = img.PointCount();
  for (double tau : {0.001, 0.003, 0.005, 0.01, 0.03}) {
    const CCSSImage once = ThresholdShallow(img, tau);
    EXPECT_EQ(ThresholdShallow(once, tau), once);
    EXPECT_LE(once.PointCount(), prev_count);
    prev_count = once.PointCount();
    // Every surviving point was present at the smaller threshold.
    const CCSSImage looser = ThresholdShallow(img, tau / 2);
    for (std::size_t r = 0; r < once.rows.size(); ++r) {
      for (const ScalePoint& p : once.rows[r].max_points) {
        EXPECT_NE(std::find(looser.rows[r].max_points.begin(),
                            looser.rows[r].max_points.end(), p),
                  looser.rows[r].max_points.end());
      }
    }
  }
}

TEST(BuildCssTest, CircleEmptyNotchTracesMerge) {
  EXPECT_TRUE(
      BuildCss(testing::Circle(256), ScaleSchedule::Uniform(256, 10)).points.empty());
  const NormalizedSilhouette s = SilhouetteFromMask(NotchHull(), {});
  const std::size_t rows = RowsUntilConvex(s);
  const CSSImage css = BuildCss(s, ScaleSchedule::Uniform(512, rows));
  std::vector<std::vector<double>> per_row(rows);
  for (const CssTracePoint& p : css.points) {
    EXPECT_GE(p.u, 0.0);
    EXPECT_LT(p.u, 1.0);
    EXPECT_EQ(p.sigma, css.schedule.sigmas[p.row]);
    per_row[p.row].push_back(p.u);
  }
  ASSERT_EQ(per_row[0].size(), 2u);
  ASSERT_EQ(per_row[rows - 2].size(), 2u);
  EXPECT_TRUE(per_row[rows - 1].empty());
  const double first = std::abs(per_row[0][1] - per_row[0][0]);
  const double last = std::abs(per_row[rows - 2][1] - per_row[rows - 2][0]);
  EXPECT_LT(last, first);
}

TEST(CausalityTest, CrossingsNeverIncreaseAlongSchedule) {
  for (const auto& model : synth::GenerateCorpus(8, 99)) {
    const NormalizedSilhouette s = SilhouetteFromMask(model.mask, {});
    const std::size_t rows = RowsUntilConvex(s);
    std::size_t prev = SIZE_MAX;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t k = CrossingCount(s, (r + 1) / 512.0);
      EXPECT_LE(k, prev) << model.meta.id << " row " << r;
      prev = k;
    }
    EXPECT_EQ(prev, 0u);
  }
}

TEST(StabilityTest, BoundaryNoiseMovesRowCountsByAtMostOne) {
  for (const auto& model : synth::GenerateCorpus(8, 55)) {
    const NormalizedSilhouette a = SilhouetteFromMask(model.mask, {});
    const NormalizedSilhouette b = SilhouetteFromMask(
        synth::AddBoundaryNoise(model.mask, 7, 0.3), {});
    const std::size_t rows = std::max(RowsUntilConvex(a), RowsUntilConvex(b));
    const ScaleSchedule schedule = ScaleSchedule::Uniform(512, rows);
    const CCSSImage fa =
        ThresholdShallow(BuildCcss(a, schedule), kDefaultConcavityThreshold);
    const CCSSImage fb =
        ThresholdShallow(BuildCcss(b, schedule), kDefaultConcavityThreshold);
    std::size_t stable = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      const long d = static_cast<long>(fa.rows[r].size()) -
                     static_cast<long>(fb.rows[r].size());
      stable += std::abs(d) <= 1;
    }
    EXPECT_GE(stable, static_cast<std::size_t>(std::ceil(0.9 * rows)))
        << model.meta.id;
  }
}

TEST(RowsUntilConvexTest, CircleNeedsOneRowAndCapApplies) {
  EXPECT_EQ(RowsUntilConvex(testing::Circle(256)), 1u);
  const NormalizedSilhouette s = SilhouetteFromMask(NotchHull(), {});
  EXPECT_EQ(RowsUntilConvex(s, 2), 2u);
}

}  // namespace
}  // namespace ccss
