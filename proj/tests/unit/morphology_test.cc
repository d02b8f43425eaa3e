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

#include "ccss/morphology.h"

#include <gtest/gtest.h>

#include "ccss/errors.h"
#include "ccss/mask.h"
#include "ccss/synth.h"
#include "support/oracles.h"
#include "support/shapes.h"

namespace ccss {
namespace {

using testing::Fill;
using testing::FilledDisc;
using testing::FilledRect;

const StructuringElement kDisc2 = StructuringElement::Disc(2);

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

// Random blobby masks: a few overlapping discs and rectangles plus noise.
std::vector<BinaryMask> RandomMasks(int count) {
  std::vector<BinaryMask> out;
  for (int i = 0; i < count; ++i) {
    synth::Rng rng(static_cast<uint64_t>(1000 + i));
    BinaryMask m(48, 40);
    const int shapes = rng.Int(1, 4);
    for (int s = 0; s < shapes; ++s) {
      if (rng.Chance(0.5)) {
        const BinaryMask d = FilledDisc(48, 40, rng.Int(6, 42), rng.Int(6, 34),
                                        rng.Int(2, 9));
        for (int y = 0; y < 40; ++y) {
          for (int x = 0; x < 48; ++x) {
            if (d.Get(x, y)) m.Set(x, y, true);
          }
        }
      } else {
        Fill(m, rng.Int(2, 30), rng.Int(2, 24), rng.Int(1, 16), rng.Int(1, 14),
             true);
      }
    }
    for (int k = 0; k < 30; ++k) m.Set(rng.Int(0, 47), rng.Int(0, 39), rng.Chance(0.5));
    out.push_back(m);
  }
  return out;
}

TEST(StructuringElementTest, DiscContainsOriginAndIsSymmetric) {
  const StructuringElement se = StructuringElement::Disc(2);
  EXPECT_EQ(se.radius(), 2);
  EXPECT_EQ(se.offsets().size(), 13u);
  int origin = 0;
  for (const Offset& o : se.offsets()) {
    EXPECT_LE(o.dx * o.dx + o.dy * o.dy, 4);
    origin += (o.dx == 0 && o.dy == 0);
  }
  EXPECT_EQ(origin, 1);
  EXPECT_EQ(StructuringElement::Disc(0).offsets().size(), 1u);
}

TEST(ErodeDilateTest, MatchNaiveOracle) {
  for (const BinaryMask& m : RandomMasks(20)) {
    for (int r : {1, 2, 3}) {
      const StructuringElement se = StructuringElement::Disc(r);
      EXPECT_EQ(Erode(m, se), oracle::Erode(m, r));
      EXPECT_EQ(Dilate(m, se), oracle::Dilate(m, r));
    }
  }
}

TEST(ReconstructTest, MatchesIteratedConditionalDilation) {
  for (const BinaryMask& m : RandomMasks(20)) {
    const BinaryMask marker = Erode(m, kDisc2);
    EXPECT_EQ(ReconstructByDilation(marker, m), oracle::Reconstruct(marker, m));
  }
}

TEST(OpeningTest, EmptyMaskIsAnError) {
  EXPECT_EQ(CodeOf([] { OpeningWithReconstruction(BinaryMask(10, 10), kDisc2); }),
            ErrorCode::kEmptyMask);
}

TEST(OpeningTest, SquareIsUnchanged) {
  const BinaryMask square = FilledRect(40, 40, 10, 10, 20, 20);
  EXPECT_EQ(OpeningWithReconstruction(square, kDisc2), square);
}

TEST(OpeningTest, RemovesThinSpike) {
  const BinaryMask square = FilledRect(40, 40, 10, 10, 20, 20);
  BinaryMask spiked = square;
  Fill(spiked, 19, 5, 1, 5, true);
  const BinaryMask opened = OpeningWithReconstruction(spiked, kDisc2);
  // A disc centred just inside the top edge still covers the spike's base
  // pixel; everything above it goes.
  BinaryMask expected = square;
  expected.Set(19, 9, true);
  EXPECT_EQ(opened, expected);
  const BinaryMask classical = oracle::Dilate(oracle::Erode(spiked, 2), 2);
  EXPECT_TRUE(classical.Get(19, 9));
  for (int y = 5; y < 9; ++y) EXPECT_FALSE(opened.Get(19, y));
  // Classical opening alone chips the corners the result keeps.
  EXPECT_FALSE(classical.Get(10, 10));
  EXPECT_TRUE(opened.Get(10, 10));
}

TEST(OpeningTest, KeepsBridgeBetweenLargeParts) {
  // Two blocks joined by a 1-px corridor: opening alone would split them.
  BinaryMask m = FilledRect(60, 30, 5, 5, 20, 20);
  Fill(m, 35, 5, 20, 20, true);
  Fill(m, 25, 14, 10, 1, true);
  ASSERT_EQ(CountComponents(m, Connectivity::kEight), 1);
  ASSERT_EQ(CountComponents(oracle::Dilate(oracle::Erode(m, 2), 2),
                            Connectivity::kEight),
            2);
  const BinaryMask opened = OpeningWithReconstruction(m, kDisc2);
  EXPECT_EQ(CountComponents(opened, Connectivity::kEight), 1);
  EXPECT_TRUE(opened.Get(30, 14));
}

TEST(OpeningTest, AntiExtensiveAndNeverAddsComponents) {
  for (const BinaryMask& m : RandomMasks(60)) {
    if (!Erode(m, kDisc2).HasObject()) continue;
    const BinaryMask opened = OpeningWithReconstruction(m, kDisc2);
    EXPECT_TRUE(opened.IsSubsetOf(m));
    EXPECT_LE(CountComponents(opened, Connectivity::kEight),
              CountComponents(m, Connectivity::kEight));
  }
}

TEST(ClosingTest, SolidSquareUnchanged) {
  const BinaryMask square = FilledRect(40, 40, 10, 10, 20, 20);
  for (int r : {1, 2, 4}) {
    EXPECT_EQ(Closing(square, StructuringElement::Disc(r)), square);
  }
}

TEST(ClosingTest, FillsOnePixelSlit) {
  const BinaryMask square = FilledRect(40, 40, 10, 10, 20, 20);
  BinaryMask slit = square;
  Fill(slit, 20, 13, 1, 14, false);
  EXPECT_EQ(Closing(slit, kDisc2), square);
  EXPECT_EQ(Closing(slit, kDisc2), oracle::Closing(slit, 2));

  // Open to the top edge: only the mouth pixel stays open, since no disc
  // placement outside the slit covers it.
  BinaryMask open_slit = square;
  Fill(open_slit, 20, 10, 1, 12, false);
  const BinaryMask closed = Closing(open_slit, kDisc2);
  EXPECT_EQ(closed, oracle::Closing(open_slit, 2));
  BinaryMask expected = square;
  expected.Set(20, 10, false);
  EXPECT_EQ(closed, expected);
}

TEST(ClosingTest, DistantSquaresUnchanged) {
  BinaryMask m = FilledRect(80, 40, 5, 10, 20, 20);
  Fill(m, 45, 10, 20, 20, true);
  EXPECT_EQ(Closing(m, kDisc2), m);
}

TEST(ClosingTest, ExtensiveAndMatchesOracle) {
  for (const BinaryMask& m : RandomMasks(30)) {
    if (!m.HasObject()) continue;
    const BinaryMask closed = Closing(m, kDisc2);
    EXPECT_TRUE(m.IsSubsetOf(closed));
    EXPECT_EQ(closed, oracle::Closing(m, 2));
  }
}

TEST(ClosingTest, EmptyMaskIsAnError) {
  EXPECT_EQ(CodeOf([] { Closing(BinaryMask(8, 8), kDisc2); }),
            ErrorCode::kEmptyMask);
}

TEST(FillHolesTest, Examples) {
  const BinaryMask square = FilledRect(30, 30, 5, 5, 20, 20);
  EXPECT_EQ(FillHoles(square), square);

  BinaryMask ring = square;
  Fill(ring, 9, 9, 12, 12, false);
  EXPECT_EQ(FillHoles(ring), square);

  BinaryMask c_shape = ring;
  Fill(c_shape, 21, 12, 4, 6, false);  // opens the cavity to the right
  EXPECT_EQ(FillHoles(c_shape), c_shape);
}

TEST(FillHolesTest, DiagonalGapDoesNotLeakBackground) {
  // The cavity touches the outside only through a diagonal step, which
  // 4-connected background flooding cannot cross.
  BinaryMask m = FilledRect(12, 12, 2, 2, 8, 8);
  Fill(m, 4, 4, 4, 4, false);
  m.Set(8, 8, false);
  m.Set(9, 9, false);
  const BinaryMask filled = FillHoles(m);
  EXPECT_TRUE(filled.Get(5, 5));
  EXPECT_FALSE(filled.Get(9, 9));
}

TEST(FillHolesTest, ExtensiveAndLeavesNoEnclosedHoles) {
  for (const BinaryMask& m : RandomMasks(40)) {
    const BinaryMask filled = FillHoles(m);
    EXPECT_TRUE(m.IsSubsetOf(filled));
    EXPECT_EQ(CountEnclosedHoles(filled), 0);
  }
}

TEST(LargestComponentTest, KeepsBiggest) {
  BinaryMask m = FilledRect(40, 20, 2, 2, 5, 5);
  Fill(m, 20, 2, 10, 10, true);
  EXPECT_EQ(LargestComponent(m), FilledRect(40, 20, 20, 2, 10, 10));
}

TEST(PreprocessTest, CleanBlobUnchanged) {
  const BinaryMask blob = FilledDisc(60, 60, 30, 30, 20);
  EXPECT_EQ(Preprocess(blob, {}), blob);
}

TEST(PreprocessTest, RemovesSpikeAndHole) {
  const BinaryMask square = FilledRect(50, 50, 10, 12, 30, 30);
  BinaryMask dirty = square;
  Fill(dirty, 24, 4, 1, 8, true);      // antenna
  Fill(dirty, 20, 22, 3, 3, false);    // interior hole
  dirty.Set(45, 45, true);             // speck
  // Composition of the per-step results: the antenna's base pixel is
  // covered by a disc that fits, the rest of it, the speck and the hole go.
  BinaryMask expected = square;
  expected.Set(24, 11, true);
  EXPECT_EQ(Preprocess(dirty, {}), expected);
  EXPECT_EQ(CountEnclosedHoles(Preprocess(dirty, {})), 0);
}

TEST(PreprocessTest, ThinObjectIsAnError) {
  BinaryMask thin(30, 30);
  Fill(thin, 5, 10, 20, 2, true);
  Fill(thin, 14, 3, 2, 20, true);
  EXPECT_EQ(CodeOf([&] { Preprocess(thin, {}); }), ErrorCode::kEmptyMask);
  EXPECT_EQ(CodeOf([] { Preprocess(BinaryMask(5, 5), {}); }),
            ErrorCode::kEmptyMask);
}

TEST(PreprocessTest, SingleComponentNoHolesAndIdempotent) {
  std::vector<BinaryMask> masks = RandomMasks(40);
  for (const auto& model : synth::GenerateCorpus(10, 5)) masks.push_back(model.mask);
  int checked = 0;
  for (const BinaryMask& m : masks) {
    BinaryMask once;
    try {
      once = Preprocess(m, {});
    } catch (const Error&) {
      continue;
    }
    ++checked;
    EXPECT_EQ(CountComponents(once, Connectivity::kEight), 1);
    EXPECT_EQ(CountEnclosedHoles(once), 0);
    EXPECT_EQ(Preprocess(once, {}), once);
  }
  EXPECT_GT(checked, 30);
}

}  // namespace
}  // namespace ccss
