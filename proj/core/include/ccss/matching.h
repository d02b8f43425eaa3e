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

#ifndef CCSS_MATCHING_H_
#define CCSS_MATCHING_H_

#include <cstddef>
#include <string>
#include <vector>

#include "ccss/descriptor.h"

namespace ccss {

// One extremum of one row: deck position and signed lobe concavity.
struct RowPoint {
  double x = 0.0;
  double c = 0.0;
};
using RowPoints = std::vector<RowPoint>;

RowPoints ExtractRow(const CCSSImage& image, std::size_t row,
                     ExtremumKind kind);

struct MatchParams {
  // Weight of the position term; (1 - alpha) weighs the concavity term.
  double alpha = 0.2;
  // Unmatched-point gain, conventionally 70 * alpha.
  double sigma_gain = 14.0;
  // Coordinate unit of the gain: 0.01 reads the gain as per-percent of the
  // normalized [0, 1] scale.
  double penalty_unit = 0.01;

  double PointPenalty() const { return sigma_gain * penalty_unit; }
  // Throws kInvalidArgument unless alpha in [0, 1] and the gain is >= 0.
  void Validate() const;
};

// Dense row-major cost matrix with rows() <= cols() whenever it comes from
// RmmMatrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return cells_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

// Cell (i, j) = alpha |dx| + (1 - alpha) |dc|. The smaller set indexes rows,
// so |target| > |model| yields a |model| x |target| matrix.
CostMatrix RmmMatrix(const RowPoints& target, const RowPoints& model,
                     double alpha);

// Minimum over all injective row -> column assignments of the summed cells,
// by recursive first-row expansion with branch-and-bound on the running
// best. An assignment's cost is accumulated in row order, so the result is
// bit-identical to any enumeration that sums in the same order. A matrix with
// no rows costs 0. Requires rows() <= cols().
double RmmOptimalCost(const CostMatrix& matrix);

// The same recursion without pruning; kept as the reference for pruning.
double RmmOptimalCostUnpruned(const CostMatrix& matrix);

// Optimal assignment cost plus the cardinality penalty
// |card(target) - card(model)| * PointPenalty().
double RowCost(const RowPoints& target, const RowPoints& model,
               const MatchParams& params);

struct ShiftEstimate {
  double offset = 0.0;      // added to target x to align with the model
  double max_family = 0.0;  // mean signed gap of the maximum family
  double min_family = 0.0;  // mean signed gap of the minimum family
  std::size_t max_pairs = 0;
  std::size_t min_pairs = 0;

  // |max_family - min_family| when both families contribute, else 0. Large
  // values flag non-corresponding images.
  double Divergence() const;
};

inline constexpr int kMaxShiftIterations = 20;
inline constexpr double kShiftTolerance = 1e-12;

// Associates every target point with the horizontally nearest model point of
// the same row and family (ties to the lowest model index), averages the
// signed gaps (model - target) per family, and takes the mean of the
// contributing family averages. The association is repeated with the target
// displaced by the current estimate until the estimate settles (at most
// kMaxShiftIterations passes); the family averages are those of the last pass.
ShiftEstimate ShiftCorrection(const CCSSImage& target, const CCSSImage& model);

CCSSImage ShiftedImage(const CCSSImage& image, double offset);

struct MatchResult {
  std::string model_id;
  double total_cost = 0.0;
  double shift_applied = 0.0;
  double shift_divergence = 0.0;
  bool mirrored = false;
};

// Shift-corrects the target, then sums RowCost over every row of the maximum
// family and of the minimum family. Throws kScheduleMismatch when the two
// images were built on different schedules.
MatchResult MatchCost(const CCSSImage& target, const CCSSImage& model,
                      const MatchParams& params);

// Lower of MatchCost(target) and MatchCost(target_mirrored) against `model`;
// ties keep the unmirrored result.
MatchResult MirrorMin(const CCSSImage& target, const CCSSImage& target_mirrored,
                      const CCSSImage& model, const MatchParams& params);

// Describes the silhouette and its horizontal mirror on the model's schedule
// with the given concavity threshold, then applies the descriptor overload.
MatchResult MirrorMin(const NormalizedSilhouette& target,
                      const CCSSImage& model, double tau,
                      const MatchParams& params);

}  // namespace ccss

#endif  // CCSS_MATCHING_H_
