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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ccss/database.h"
#include "ccss/descriptor.h"
#include "ccss/matching.h"
#include "ccss/synth.h"
#include "support/oracles.h"
#include "support/shapes.h"

namespace ccss {
namespace {

constexpr std::size_t kCorpusSize = 200;
constexpr uint64_t kCorpusSeed = 2027;
constexpr std::size_t kLatencyCorpusSize = 1129;
constexpr uint64_t kLatencyCorpusSeed = 4242;
constexpr uint64_t kStepPairSeed = 11;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void Report(const char* name, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

struct Corpus {
  std::vector<synth::SyntheticModel> models;
  ModelDatabase raw;       // tau = 0
  ModelDatabase filtered;  // default tau
};

Corpus BuildCorpus(std::size_t count, uint64_t seed) {
  Corpus c;
  c.models = synth::GenerateCorpus(count, seed);
  std::vector<std::pair<ModelMetadata, BinaryMask>> items;
  for (const auto& m : c.models) items.emplace_back(m.meta, m.mask);
  DescriptorParams raw_params;
  raw_params.tau = 0.0;
  c.raw = ModelDatabase::BuildFromMasks(items, raw_params);
  c.filtered = ModelDatabase(DescriptorParams(), c.raw.schedule());
  for (const ModelRecord& r : c.raw.records()) {
    ModelRecord f = r;
    f.descriptor = ThresholdShallow(r.descriptor, kDefaultConcavityThreshold);
    f.descriptor_mirrored =
        ThresholdShallow(r.descriptor_mirrored, kDefaultConcavityThreshold);
    c.filtered.AddRecord(std::move(f));
  }
  return c;
}

std::size_t RankOf(const RankedList& ranked, const std::string& id) {
  for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
    if (ranked.entries[i].model_id == id) return i + 1;
  }
  return 0;
}

void RmmOracleEquivalence() {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> rows_dist(1, 6);
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  const std::size_t trials = 1200;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t rows = static_cast<std::size_t>(rows_dist(rng));
    std::uniform_int_distribution<int> cols_dist(static_cast<int>(rows), 8);
    const std::size_t cols = static_cast<std::size_t>(cols_dist(rng));
    CostMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
    }
    if (RmmOptimalCost(m) != oracle::ExhaustiveAssignment(m)) ++mismatches;
  }
  const double elapsed = Seconds(start);
  Report("rmm_oracle_equivalence", mismatches == 0 && elapsed < 10.0,
         Format("%zu matrices up to 6x8, %zu mismatches, %.2f s", trials,
                mismatches, elapsed));
}

void SelfRetrieval(const Corpus& c) {
  std::size_t rank_one = 0;
  double worst = 0.0;
  const MatchParams params;
  for (const auto& m : c.models) {
    const RankedList ranked = c.filtered.Query(m.mask, params);
    if (RankOf(ranked, m.meta.id) == 1) ++rank_one;
    for (const MatchResult& e : ranked.entries) {
      if (e.model_id == m.meta.id) worst = std::max(worst, e.total_cost);
    }
  }
  Report("self_retrieval", rank_one == c.models.size() && worst < 1e-6,
         Format("%zu/%zu at rank 1, worst self cost %.3g", rank_one,
                c.models.size(), worst));
}

void PerturbedRetrieval(const Corpus& c) {
  const MatchParams params;
  std::size_t rank_one = 0;
  std::size_t top_six = 0;
  for (std::size_t i = 0; i < c.models.size(); ++i) {
    const BinaryMask q = synth::PerturbedQuery(c.models[i].design, 50000 + i);
    const std::size_t rank =
        RankOf(c.filtered.Query(q, params), c.models[i].meta.id);
    rank_one += rank == 1;
    top_six += rank >= 1 && rank <= 6;
  }
  const double n = static_cast<double>(c.models.size());
  Report("perturbed_retrieval", rank_one >= 0.80 * n && top_six >= 0.95 * n,
         Format("rank-1 %.1f%%, top-6 %.1f%% (tau %.3f, alpha %.2f, "
                "sigma_gain %.1f)",
                100.0 * rank_one / n, 100.0 * top_six / n,
                kDefaultConcavityThreshold, params.alpha, params.sigma_gain));
}

void ShallowConcavity(const Corpus& c) {
  const auto [plain, stepped] = synth::ShallowStepPair(kStepPairSeed);
  const MatchParams params;
  auto evaluate = [&](const ModelDatabase& db, double* pair, double* p5) {
    const Description a = db.DescribeMask(synth::RasterizeHull(plain));
    const Description b = db.DescribeMask(synth::RasterizeHull(stepped));
    std::vector<double> costs;
    for (const ModelRecord& r : db.records()) {
      costs.push_back(
          MirrorMin(a.descriptor, a.descriptor_mirrored, r.descriptor, params)
              .total_cost);
    }
    std::sort(costs.begin(), costs.end());
    *p5 = costs[static_cast<std::size_t>(0.05 * static_cast<double>(costs.size()))];
    *pair = MirrorMin(a.descriptor, a.descriptor_mirrored, b.descriptor, params)
                .total_cost;
  };
  double pair_f = 0, p5_f = 0, pair_r = 0, p5_r = 0;
  evaluate(c.filtered, &pair_f, &p5_f);
  evaluate(c.raw, &pair_r, &p5_r);
  const bool filtered_ok = pair_f < p5_f;
  const bool raw_ok = !(pair_r < p5_r);
  Report("shallow_concavity_regression", filtered_ok && raw_ok,
         Format("thresholded pair %.3f vs p5 %.3f (%s); unthresholded pair "
                "%.3f vs p5 %.3f (%s)",
                pair_f, p5_f, filtered_ok ? "below" : "not below", pair_r,
                p5_r, raw_ok ? "not below" : "below"));
}

void TranslationMirror(const Corpus& c) {
  const MatchParams params;
  double worst_shift = 0.0;
  double worst_mirror = 0.0;
  std::size_t mirrored_branch = 0;
  for (const ModelRecord& r : c.filtered.records()) {
    worst_shift = std::max(
        worst_shift,
        MatchCost(r.descriptor, ShiftedImage(r.descriptor, 0.03), params)
            .total_cost);
    const MatchResult m = MirrorMin(MirrorHorizontally(r.silhouette),
                                    r.descriptor, kDefaultConcavityThreshold,
                                    params);
    worst_mirror = std::max(worst_mirror, m.total_cost);
    mirrored_branch += m.mirrored;
  }
  const std::size_t n = c.filtered.size();
  Report("translation_mirror_invariance",
         worst_shift < 1e-6 && worst_mirror < 1e-6 && mirrored_branch == n,
         Format("worst +0.03 shifted cost %.3g, worst mirrored cost %.3g, "
                "mirrored branch %zu/%zu",
                worst_shift, worst_mirror, mirrored_branch, n));
}

void SmoothingCausality(const Corpus& c) {
  std::size_t causal = 0;
  for (const ModelRecord& r : c.raw.records()) {
    bool ok = true;
    for (std::size_t row = 1; row < r.descriptor.rows.size(); ++row) {
      if (r.descriptor.rows[row].size() > r.descriptor.rows[row - 1].size()) {
        ok = false;
      }
    }
    causal += ok;
  }
  Report("smoothing_causality", causal == c.raw.size(),
         Format("%zu/%zu silhouettes with non-increasing crossing counts over "
                "%zu rows",
                causal, c.raw.size(), c.raw.schedule().size()));
}

void Latency() {
  const auto build_start = Clock::now();
  const auto corpus = synth::GenerateCorpus(kLatencyCorpusSize, kLatencyCorpusSeed);
  std::vector<std::pair<ModelMetadata, BinaryMask>> items;
  for (const auto& m : corpus) items.emplace_back(m.meta, m.mask);
  const ModelDatabase db = ModelDatabase::BuildFromMasks(items, DescriptorParams());
  const double build = Seconds(build_start);
  const BinaryMask q = synth::PerturbedQuery(corpus[17].design, 99);
  const auto start = Clock::now();
  const RankedList ranked = db.Query(q, MatchParams());
  const double elapsed = Seconds(start);
  Report("latency", elapsed <= 60.0 && ranked.entries.size() == db.size(),
         Format("query against %zu models in %.3f s (target 5 s, limit 60 s; "
                "build %.1f s)",
                db.size(), elapsed, build));
}

void CurvatureCorrectness() {
  const NormalizedSilhouette circle = testing::Circle(512);
  const double r = 1.0 / (2.0 * std::numbers::pi);
  double circle_err = 0.0;
  for (double k : Curvature(circle).kappa) {
    circle_err = std::max(circle_err, std::abs(k * r - 1.0));
  }
  const double a = 2.0, b = 1.0;
  const NormalizedSilhouette ellipse = testing::Ellipse(a, b, 512);
  const std::vector<double> k = Curvature(ellipse).kappa;
  const double kmax = *std::max_element(k.begin(), k.end());
  const double kmin = *std::min_element(k.begin(), k.end());
  const double scale = ellipse.pixel_scale;
  const double max_err = std::abs(kmax / (scale * a / (b * b)) - 1.0);
  const double min_err = std::abs(kmin / (scale * b / (a * a)) - 1.0);
  Report("curvature_correctness",
         circle_err <= 0.02 && max_err <= 0.05 && min_err <= 0.05,
         Format("circle max rel. error %.2e; ellipse extrema rel. errors "
                "%.2e, %.2e (N = 512)",
                circle_err, max_err, min_err));
}

}  // namespace
}  // namespace ccss

int main() {
  using namespace ccss;
  RmmOracleEquivalence();
  CurvatureCorrectness();
  const Corpus corpus = BuildCorpus(kCorpusSize, kCorpusSeed);
  SelfRetrieval(corpus);
  PerturbedRetrieval(corpus);
  ShallowConcavity(corpus);
  TranslationMirror(corpus);
  SmoothingCausality(corpus);
  Latency();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
