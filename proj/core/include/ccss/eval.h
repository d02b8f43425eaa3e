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

#ifndef CCSS_EVAL_H_
#define CCSS_EVAL_H_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ccss {

struct QueryOutcome {
  std::string query;
  std::string expected_id;
  std::size_t rank = 0;  // 1-based position of the expected model
  double latency_seconds = 0.0;
};

// Rank-frequency summary: one column per rank position 1..positions plus an
// "other" column for anything ranked lower.
struct EvalReport {
  std::vector<QueryOutcome> outcomes;
  std::vector<std::string> missing_ids;  // ground truth not in the database
  std::size_t positions = 6;
  std::vector<std::size_t> frequency;   // size positions + 1
  std::vector<std::size_t> cumulative;  // size positions + 1
  double mean_latency_seconds = 0.0;

  std::size_t query_count() const { return outcomes.size(); }
  double CumulativeFraction(std::size_t position) const;
};

EvalReport SummarizeOutcomes(std::vector<QueryOutcome> outcomes,
                             std::vector<std::string> missing_ids,
                             std::size_t positions = 6);

// Four-row table: counts, cumulative counts, fractions, cumulative fractions.
std::string FormatFrequencyTable(const EvalReport& report);
nlohmann::json EvalReportToJson(const EvalReport& report);

}  // namespace ccss

#endif  // CCSS_EVAL_H_
