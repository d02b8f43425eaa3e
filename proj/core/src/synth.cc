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

#include "ccss/synth.h"

#include <algorithm>
#include <cstdio>

namespace ccss::synth {

int Rng::Int(int lo, int hi) {
  if (hi <= lo) return lo;
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::Unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace {

struct Vertex {
  double x;
  double y;
};

// Even-odd fill sampled at pixel centres.
void FillPolygon(BinaryMask& mask, const std::vector<Vertex>& poly, bool value) {
  double y_lo = poly[0].y, y_hi = poly[0].y;
  for (const Vertex& v : poly) {
    y_lo = std::min(y_lo, v.y);
    y_hi = std::max(y_hi, v.y);
  }
  const int row_lo = std::max(0, static_cast<int>(y_lo) - 1);
  const int row_hi = std::min(mask.height() - 1, static_cast<int>(y_hi) + 1);
  std::vector<double> xs;
  for (int y = row_lo; y <= row_hi; ++y) {
    const double yc = y + 0.5;
    xs.clear();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vertex& a = poly[i];
      const Vertex& b = poly[(i + 1) % poly.size()];
      if ((a.y <= yc && b.y > yc) || (b.y <= yc && a.y > yc)) {
        xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      for (int x = std::max(0, static_cast<int>(xs[k] - 0.5));
           x < mask.width() && x + 0.5 < xs[k + 1]; ++x) {
        if (x + 0.5 >= xs[k]) mask.Set(x, y, value);
      }
    }
  }
}

void FillRect(BinaryMask& mask, int x0, int y0, int x1, int y1, bool value) {
  for (int y = std::max(0, y0); y < std::min(mask.height(), y1); ++y) {
    for (int x = std::max(0, x0); x < std::min(mask.width(), x1); ++x) {
      mask.Set(x, y, value);
    }
  }
}

// Highest object row under the columns [x0, x1), or the deck line.
int SurfaceTop(const BinaryMask& mask, int x0, int x1, int fallback) {
  int top = mask.height();
  for (int x = std::max(0, x0); x < std::min(mask.width(), x1); ++x) {
    for (int y = 0; y < mask.height(); ++y) {
      if (mask.Get(x, y)) {
        top = std::min(top, y);
        break;
      }
    }
  }
  return top < mask.height() ? top : fallback;
}

void StandBox(BinaryMask& mask, const Box& b, int deck_y) {
  const int base = SurfaceTop(mask, b.x, b.x + b.width, deck_y) + 2;
  const double top = base - 2 - b.height;
  FillPolygon(mask,
              {{double(b.x), double(base)},
               {double(b.x + b.width), double(base)},
               {double(b.x + b.width - b.taper), top},
               {double(b.x + b.taper), top}},
              true);
}

}  // namespace

BinaryMask RasterizeHull(const HullDesign& d) {
  BinaryMask mask(d.image_width, d.image_height);
  const double stern = d.SternX();
  const double bow = d.BowX();
  const double deck = d.DeckY();
  const double water = d.Waterline();
  FillPolygon(mask,
              {{stern, deck},
               {bow - d.sheer_length, deck},
               {bow, deck - d.sheer},
               {bow - d.bow_rake, water},
               {stern + d.stern_rake, water}},
              true);
  if (d.deck_step_x >= 0) {
    FillRect(mask, d.deck_step_x, d.DeckY() - 1, d.BowX() - d.sheer_length,
             d.DeckY(), true);
  }
  for (const WellDeck& w : d.wells) {
    FillRect(mask, w.x, d.DeckY(), w.x + w.width, d.DeckY() + w.depth, false);
  }
  for (const Box& b : d.superstructure) StandBox(mask, b, d.DeckY());
  for (const Box& b : d.upper_tier) StandBox(mask, b, d.DeckY());
  for (const Box& b : d.fittings) StandBox(mask, b, d.DeckY());
  for (const Box& b : d.masts) StandBox(mask, b, d.DeckY());
  return mask;
}

HullDesign RandomHullDesign(uint64_t seed) {
  Rng rng(seed);
  HullDesign d;
  d.length = rng.Int(460, 560);
  d.image_width = d.length + 2 * d.margin + 20;
  d.image_height = 210;
  d.hull_height = rng.Int(26, 46);
  d.sheer = rng.Int(0, 14);
  d.sheer_length = rng.Int(40, 100);
  d.bow_rake = rng.Int(12, 55);
  d.stern_rake = rng.Int(0, 18);

  const int lo = d.SternX() + 15;
  const int hi = d.BowX() - d.sheer_length - 10;
  // Superstructure blocks laid out left to right with gaps.
  int cursor = lo + rng.Int(0, 60);
  const int blocks = rng.Int(2, 4);
  for (int i = 0; i < blocks && cursor < hi - 30; ++i) {
    Box b;
    b.x = cursor;
    b.width = std::min(rng.Int(30, 110), hi - cursor);
    b.height = rng.Int(12, 42);
    b.taper = rng.Int(0, std::min(8, b.width / 5));
    d.superstructure.push_back(b);
    if (rng.Chance(0.5) && b.width > 40) {
      Box t;
      t.width = rng.Int(20, b.width - 12);
      t.x = b.x + rng.Int(4, b.width - t.width - 4);
      t.height = rng.Int(10, 28);
      t.taper = rng.Int(0, 4);
      d.upper_tier.push_back(t);
    }
    cursor = b.x + b.width + rng.Int(20, 90);
  }
  if (cursor < hi - 40 && rng.Chance(0.6)) {
    WellDeck w;
    w.x = cursor + rng.Int(0, 10);
    w.width = std::min(rng.Int(25, 60), hi - w.x);
    w.depth = rng.Int(6, std::max(7, d.hull_height / 3));
    d.wells.push_back(w);
  }
  const int masts = rng.Int(1, 3);
  for (int i = 0; i < masts; ++i) {
    const Box& host = d.superstructure[rng.Int(
        0, static_cast<int>(d.superstructure.size()) - 1)];
    Box m;
    m.width = rng.Int(6, 9);
    m.x = host.x + rng.Int(0, std::max(0, host.width - m.width));
    m.height = rng.Int(15, 45);
    m.taper = rng.Int(0, 1);
    d.masts.push_back(m);
  }
  const int fittings = rng.Int(1, 3);
  for (int i = 0; i < fittings; ++i) {
    Box f;
    f.width = rng.Int(10, 18);
    f.x = rng.Int(lo, hi - f.width);
    f.height = rng.Int(7, 12);
    d.fittings.push_back(f);
  }
  return d;
}

BinaryMask AddBoundaryNoise(const BinaryMask& mask, uint64_t seed,
                            double probability) {
  Rng rng(seed);
  BinaryMask out = mask;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const bool v = mask.Get(x, y);
      const bool boundary = mask.Get(x + 1, y) != v || mask.Get(x - 1, y) != v ||
                            mask.Get(x, y + 1) != v || mask.Get(x, y - 1) != v;
      if (boundary && rng.Chance(probability)) out.Set(x, y, !v);
    }
  }
  return out;
}

HullDesign PerturbDesign(const HullDesign& design, uint64_t seed) {
  Rng rng(seed);
  HullDesign d = design;
  if (!d.fittings.empty() && rng.Chance(0.5)) {
    d.fittings.erase(d.fittings.begin() +
                     rng.Int(0, static_cast<int>(d.fittings.size()) - 1));
  } else {
    Box f;
    f.width = rng.Int(10, 18);
    f.x = rng.Int(d.SternX() + 15, d.BowX() - d.sheer_length - 10 - f.width);
    f.height = rng.Int(7, 12);
    d.fittings.push_back(f);
  }
  return d;
}

std::pair<HullDesign, HullDesign> ShallowStepPair(uint64_t seed) {
  Rng rng(seed);
  HullDesign d;
  d.length = 540;
  d.image_width = d.length + 2 * d.margin + 20;
  d.image_height = 210;
  d.hull_height = 34;
  d.sheer = 8;
  d.sheer_length = 60;
  d.bow_rake = 30;
  d.stern_rake = 8;
  // Superstructure confined to the after half leaves a long straight deck.
  d.superstructure.push_back({d.SternX() + 30, 70, 30, 4});
  d.superstructure.push_back({d.SternX() + 130, 50, 22, 2});
  d.upper_tier.push_back({d.SternX() + 42, 36, 18, 2});
  d.masts.push_back({d.SternX() + 55, 7, 30, 0});
  d.fittings.push_back({d.SternX() + 200, 14, 9, 0});
  d.superstructure[0].height += rng.Int(0, 6);
  HullDesign stepped = d;
  stepped.deck_step_x = d.SternX() + 330;
  return {d, stepped};
}

std::vector<SyntheticModel> GenerateCorpus(std::size_t count, uint64_t seed) {
  std::vector<SyntheticModel> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SyntheticModel m;
    char id[32];
    std::snprintf(id, sizeof(id), "syn-%04zu", i);
    m.meta.id = id;
    m.meta.display_name = std::string("Synthetic hull ") + (id + 4);
    m.design = RandomHullDesign(seed * 1000003ULL + i);
    m.meta.class_name = "class-" + std::to_string(m.design.superstructure.size()) +
                        "-" + std::to_string(m.design.masts.size());
    m.mask = RasterizeHull(m.design);
    out.push_back(std::move(m));
  }
  return out;
}

BinaryMask PerturbedQuery(const HullDesign& design, uint64_t seed) {
  return AddBoundaryNoise(RasterizeHull(PerturbDesign(design, seed)),
                          seed ^ 0x9e3779b97f4a7c15ULL);
}

}  // namespace ccss::synth
