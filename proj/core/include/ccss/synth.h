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

#ifndef CCSS_SYNTH_H_
#define CCSS_SYNTH_H_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ccss/database.h"
#include "ccss/mask.h"

namespace ccss::synth {

// Procedural side-view hull silhouettes for tests, benchmarks and the demo
// corpus. All placements are in raster pixels (y down); features stand on
// whatever surface is highest under them at rasterization time.
struct Box {
  int x = 0;
  int width = 0;
  int height = 0;
  int taper = 0;  // top edge is inset by this much on each side
};

struct WellDeck {
  int x = 0;
  int width = 0;
  int depth = 0;
};

struct HullDesign {
  int image_width = 0;
  int image_height = 0;
  int margin = 20;
  int length = 0;
  int hull_height = 0;
  int sheer = 0;         // bow rise above the deck line
  int sheer_length = 0;  // run over which the deck rises to the bow
  int bow_rake = 0;
  int stern_rake = 0;
  std::vector<Box> superstructure;  // first tier, on the deck
  std::vector<Box> upper_tier;      // on top of the first tier
  std::vector<Box> masts;           // narrow, tall
  std::vector<Box> fittings;        // small deck features
  std::vector<WellDeck> wells;
  // Raises the deck by one pixel from this x to the start of the sheer; -1
  // disables it.
  int deck_step_x = -1;

  int SternX() const { return margin; }
  int BowX() const { return margin + length; }
  int Waterline() const { return image_height - margin; }
  int DeckY() const { return Waterline() - hull_height; }
};

// Deterministic across platforms: draws only raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  int Int(int lo, int hi);  // inclusive
  double Unit();            // [0, 1)
  bool Chance(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

HullDesign RandomHullDesign(uint64_t seed);
BinaryMask RasterizeHull(const HullDesign& design);

// Flips pixels on either side of the boundary (4-neighbourhood) with the given
// probability: a +-1 px ragged edge.
BinaryMask AddBoundaryNoise(const BinaryMask& mask, uint64_t seed,
                            double probability = 0.3);

// Removes one small deck fitting when present (and on a coin flip), else adds
// one.
HullDesign PerturbDesign(const HullDesign& design, uint64_t seed);

// A hull with a long bare deck and its copy with a one-pixel deck step.
std::pair<HullDesign, HullDesign> ShallowStepPair(uint64_t seed);

struct SyntheticModel {
  ModelMetadata meta;
  HullDesign design;
  BinaryMask mask;
};

// Models "syn-0000", "syn-0001", ... with seeds derived from `seed`.
std::vector<SyntheticModel> GenerateCorpus(std::size_t count, uint64_t seed);

// Boundary noise plus one added or removed fitting.
BinaryMask PerturbedQuery(const HullDesign& design, uint64_t seed);

}  // namespace ccss::synth

#endif  // CCSS_SYNTH_H_
