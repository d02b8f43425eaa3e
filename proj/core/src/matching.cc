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

#include "ccss/matching.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "ccss/errors.h"

namespace ccss {

RowPoints ExtractRow(const CCSSImage& image, std::size_t row,
                     ExtremumKind kind) {
  RowPoints out;
  if (row >= image.rows.size()) return out;
  for (const ScalePoint& p : image.rows[row].Family(kind)) {
    out.push_back({p.x_deck, p.c});
  }
  return out;
}

void MatchParams::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  }
  if (!(sigma_gain >= 0.0) || !(penalty_unit >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sigma gain and penalty unit must be >= 0");
  }
}

CostMatrix RmmMatrix(const RowPoints& target, const RowPoints& model,
                     double alpha) {
  const bool swapped = target.size() > model.size();
  const RowPoints& rows = swapped ? model : target;
  const RowPoints& cols = swapped ? target : model;
  CostMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m(i, j) = alpha * std::abs(rows[i].x - cols[j].x) +
                (1.0 - alpha) * std::abs(rows[i].c - cols[j].c);
    }
  }
  return m;
}

namespace {

// Beyond this many rows exhaustive search is replaced by the Hungarian
// solution, which is optimal as well.
constexpr std::size_t kMaxExhaustiveRows = 10;

// Shortest augmenting path Hungarian method for rows <= cols. Returns the
// column assigned to each row.
std::vector<std::size_t> HungarianAssignment(const CostMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t k = m.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> p(k + 1, 0), way(k + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = m(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t j = 1; j <= k; ++j) {
    if (p[j] != 0) assignment[p[j] - 1] = j - 1;
  }
  return assignment;
}

double AssignmentCost(const CostMatrix& m,
                      const std::vector<std::size_t>& assignment) {
  double total = 0.0;
  for (std::size_t r = 0; r < assignment.size(); ++r) {
    total += m(r, assignment[r]);
  }
  return total;
}

class RmmSearch {
 public:
  RmmSearch(const CostMatrix& m, bool prune)
      : m_(m), prune_(prune), used_(m.cols(), false) {}

  double Run(double incumbent) {
    best_ = incumbent;
    Expand(0, 0.0);
    return best_;
  }

 private:
  // Sum over the remaining rows of their cheapest still-free cell.
  double LowerBound(std::size_t row) const {
    double bound = 0.0;
    for (std::size_t r = row; r < m_.rows(); ++r) {
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < m_.cols(); ++c) {
        if (!used_[c]) cheapest = std::min(cheapest, m_(r, c));
      }
      bound += cheapest;
    }
    return bound;
  }

  // Takes the first remaining row, tries every free column for it and
  // recurses on the reduced matrix.
  void Expand(std::size_t row, double partial) {
    if (row == m_.rows()) {
      if (partial < best_) best_ = partial;
      return;
    }
    if (prune_) {
      if (partial >= best_) return;
      // Float sums of non-negative terms stay within a relative 1e-13 of the
      // exact sum for these sizes, so the slack keeps pruning exact.
      if ((partial + LowerBound(row)) * (1.0 - 1e-12) >= best_) return;
    }
    for (std::size_t c = 0; c < m_.cols(); ++c) {
      if (used_[c]) continue;
      used_[c] = true;
      Expand(row + 1, partial + m_(row, c));
      used_[c] = false;
    }
  }

  const CostMatrix& m_;
  bool prune_;
  std::vector<bool> used_;
  double best_ = std::numeric_limits<double>::infinity();
};

void RequireWide(const CostMatrix& matrix) {
  if (matrix.rows() > matrix.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matching matrix needs at least as many columns as rows");
  }
}

}  // namespace

double RmmOptimalCost(const CostMatrix& matrix) {
  RequireWide(matrix);
  if (matrix.rows() == 0) return 0.0;
  const double incumbent =
      AssignmentCost(matrix, HungarianAssignment(matrix));
  if (matrix.rows() > kMaxExhaustiveRows) return incumbent;
  return RmmSearch(matrix, /*prune=*/true).Run(incumbent);
}

double RmmOptimalCostUnpruned(const CostMatrix& matrix) {
  RequireWide(matrix);
  if (matrix.rows() == 0) return 0.0;
  return RmmSearch(matrix, /*prune=*/false)
      .Run(std::numeric_limits<double>::infinity());
}

double RowCost(const RowPoints& target, const RowPoints& model,
               const MatchParams& params) {
  if (target.empty() && model.empty()) return 0.0;
  const double assignment =
      RmmOptimalCost(RmmMatrix(target, model, params.alpha));
  const double unmatched = static_cast<double>(
      target.size() > model.size() ? target.size() - model.size()
                                   : model.size() - target.size());
  return assignment + unmatched * params.PointPenalty();
}

double ShiftEstimate::Divergence() const {
  if (max_pairs == 0 || min_pairs == 0) return 0.0;
  return std::abs(max_family - min_family);
}

namespace {

struct FamilyShift {
  double mean = 0.0;
  std::size_t pairs = 0;
};

// Mean signed gap (model - target) over nearest-point pairs, with the target
// displaced by `offset` before association.
FamilyShift EstimateFamily(const CCSSImage& target, const CCSSImage& model,
                           ExtremumKind kind, double offset) {
  double sum = 0.0;
  std::size_t pairs = 0;
  const std::size_t rows = std::min(target.rows.size(), model.rows.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& t_points = target.rows[r].Family(kind);
    const auto& m_points = model.rows[r].Family(kind);
    if (m_points.empty()) continue;
    for (const ScalePoint& t : t_points) {
      const double x = t.x_deck + offset;
      std::size_t nearest = 0;
      double best = std::abs(m_points[0].x_deck - x);
      for (std::size_t j = 1; j < m_points.size(); ++j) {
        const double d = std::abs(m_points[j].x_deck - x);
        if (d < best) {
          best = d;
          nearest = j;
        }
      }
      sum += m_points[nearest].x_deck - x;
      ++pairs;
    }
  }
  return {pairs > 0 ? offset + sum / static_cast<double>(pairs) : offset, pairs};
}

void RequireSameSchedule(const CCSSImage& a, const CCSSImage& b) {
  if (!(a.schedule == b.schedule) || a.rows.size() != b.rows.size()) {
    throw Error(ErrorCode::kScheduleMismatch,
                "target and model descriptors use different scale schedules");
  }
}

}  // namespace

ShiftEstimate ShiftCorrection(const CCSSImage& target, const CCSSImage& model) {
  ShiftEstimate out;
  for (int iter = 0; iter < kMaxShiftIterations; ++iter) {
    const FamilyShift max =
        EstimateFamily(target, model, ExtremumKind::kMaximum, out.offset);
    const FamilyShift min =
        EstimateFamily(target, model, ExtremumKind::kMinimum, out.offset);
    ShiftEstimate next;
    next.max_family = max.mean;
    next.min_family = min.mean;
    next.max_pairs = max.pairs;
    next.min_pairs = min.pairs;
    if (max.pairs > 0 && min.pairs > 0) {
      next.offset = 0.5 * (max.mean + min.mean);
    } else if (max.pairs > 0) {
      next.offset = max.mean;
    } else if (min.pairs > 0) {
      next.offset = min.mean;
    }
    const bool settled = std::abs(next.offset - out.offset) <= kShiftTolerance;
    out = next;
    if (settled) break;
  }
  return out;
}

CCSSImage ShiftedImage(const CCSSImage& image, double offset) {
  CCSSImage out = image;
  for (auto& row : out.rows) {
    for (auto& p : row.max_points) p.x_deck += offset;
    for (auto& p : row.min_points) p.x_deck += offset;
  }
  return out;
}

MatchResult MatchCost(const CCSSImage& target, const CCSSImage& model,
                      const MatchParams& params) {
  RequireSameSchedule(target, model);
  params.Validate();
  const ShiftEstimate shift = ShiftCorrection(target, model);
  const CCSSImage aligned = ShiftedImage(target, shift.offset);
  double max_sum = 0.0;
  double min_sum = 0.0;
  for (std::size_t r = 0; r < aligned.rows.size(); ++r) {
    max_sum += RowCost(ExtractRow(aligned, r, ExtremumKind::kMaximum),
                       ExtractRow(model, r, ExtremumKind::kMaximum), params);
  }
  for (std::size_t r = 0; r < aligned.rows.size(); ++r) {
    min_sum += RowCost(ExtractRow(aligned, r, ExtremumKind::kMinimum),
                       ExtractRow(model, r, ExtremumKind::kMinimum), params);
  }
  MatchResult result;
  result.total_cost = max_sum + min_sum;
  result.shift_applied = shift.offset;
  result.shift_divergence = shift.Divergence();
  return result;
}

MatchResult MirrorMin(const CCSSImage& target, const CCSSImage& target_mirrored,
                      const CCSSImage& model, const MatchParams& params) {
  MatchResult direct = MatchCost(target, model, params);
  MatchResult flipped = MatchCost(target_mirrored, model, params);
  flipped.mirrored = true;
  return flipped.total_cost < direct.total_cost ? flipped : direct;
}

MatchResult MirrorMin(const NormalizedSilhouette& target,
                      const CCSSImage& model, double tau,
                      const MatchParams& params) {
  const CCSSImage direct = ThresholdShallow(BuildCcss(target, model.schedule), tau);
  const CCSSImage flipped = ThresholdShallow(
      BuildCcss(MirrorHorizontally(target), model.schedule), tau);
  return MirrorMin(direct, flipped, model, params);
}

}  // namespace ccss
