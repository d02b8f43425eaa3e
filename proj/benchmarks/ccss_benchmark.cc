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

#include <random>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "ccss/database.h"
#include "ccss/descriptor.h"
#include "ccss/matching.h"
#include "ccss/synth.h"

namespace ccss {
namespace {

CostMatrix RandomMatrix(std::size_t rows, std::size_t cols, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
  }
  return m;
}

void BM_RmmOptimalCost(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const CostMatrix m = RandomMatrix(rows, rows + 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(RmmOptimalCost(m));
}
BENCHMARK(BM_RmmOptimalCost)->DenseRange(2, 10, 2);

void BM_RmmOptimalCostUnpruned(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const CostMatrix m = RandomMatrix(rows, rows + 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(RmmOptimalCostUnpruned(m));
}
BENCHMARK(BM_RmmOptimalCostUnpruned)->DenseRange(2, 8, 2);

void BM_BuildCcss(benchmark::State& state) {
  const NormalizedSilhouette s =
      SilhouetteFromMask(synth::GenerateCorpus(1, 3)[0].mask, {});
  const ScaleSchedule schedule = ScaleSchedule::Uniform(kDefaultSamples, RowsUntilConvex(s));
  for (auto _ : state) benchmark::DoNotOptimize(BuildCcss(s, schedule));
  state.counters["rows"] = static_cast<double>(schedule.size());
}
BENCHMARK(BM_BuildCcss)->Unit(benchmark::kMillisecond);

void BM_Query(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  auto corpus = synth::GenerateCorpus(count, 11);
  std::vector<std::pair<ModelMetadata, BinaryMask>> items;
  for (auto& m : corpus) items.emplace_back(m.meta, m.mask);
  const ModelDatabase db = ModelDatabase::BuildFromMasks(items, DescriptorParams());
  const BinaryMask target = synth::PerturbedQuery(corpus[0].design, 5);
  for (auto _ : state) benchmark::DoNotOptimize(db.Query(target, MatchParams()));
  state.counters["models"] = static_cast<double>(db.size());
}
BENCHMARK(BM_Query)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ccss

BENCHMARK_MAIN();
