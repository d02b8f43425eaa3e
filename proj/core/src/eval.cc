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

#include "ccss/eval.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ccss {

double EvalReport::CumulativeFraction(std::size_t position) const {
  if (outcomes.empty() || position == 0) return 0.0;
  const std::size_t idx = std::min(position, positions) - 1;
  return static_cast<double>(cumulative[idx]) /
         static_cast<double>(outcomes.size());
}

EvalReport SummarizeOutcomes(std::vector<QueryOutcome> outcomes,
                             std::vector<std::string> missing_ids,
                             std::size_t positions) {
  EvalReport report;
  report.positions = positions;
  report.frequency.assign(positions + 1, 0);
  report.cumulative.assign(positions + 1, 0);
  double latency = 0.0;
  for (const QueryOutcome& o : outcomes) {
    const std::size_t slot =
        (o.rank >= 1 && o.rank <= positions) ? o.rank - 1 : positions;
    ++report.frequency[slot];
    latency += o.latency_seconds;
  }
  std::size_t running = 0;
  for (std::size_t i = 0; i <= positions; ++i) {
    running += report.frequency[i];
    report.cumulative[i] = running;
  }
  report.mean_latency_seconds =
      outcomes.empty() ? 0.0 : latency / static_cast<double>(outcomes.size());
  report.outcomes = std::move(outcomes);
  report.missing_ids = std::move(missing_ids);
  return report;
}

std::string FormatFrequencyTable(const EvalReport& report) {
  std::ostringstream out;
  char buf[64];
  out << "                               ";
  for (std::size_t i = 1; i <= report.positions; ++i) {
    std::snprintf(buf, sizeof(buf), "%7zu", i);
    out << buf;
  }
  out << "  Other\n";
  const double n = report.outcomes.empty()
                       ? 1.0
                       : static_cast<double>(report.outcomes.size());
  auto count_row = [&](const char* label, const std::vector<std::size_t>& v) {
    std::snprintf(buf, sizeof(buf), "%-31s", label);
    out << buf;
    for (std::size_t x : v) {
      std::snprintf(buf, sizeof(buf), "%7zu", x);
      out << buf;
    }
    out << '\n';
  };
  auto fraction_row = [&](const char* label, const std::vector<std::size_t>& v) {
    std::snprintf(buf, sizeof(buf), "%-31s", label);
    out << buf;
    for (std::size_t x : v) {
      std::snprintf(buf, sizeof(buf), "%7.2f", static_cast<double>(x) / n);
      out << buf;
    }
    out << '\n';
  };
  count_row("Relative Frequency", report.frequency);
  count_row("Relative Cumulative Frequency", report.cumulative);
  fraction_row("Absolute Frequency", report.frequency);
  fraction_row("Absolute Cumulative Frequency", report.cumulative);
  std::snprintf(buf, sizeof(buf), "%.4f", report.mean_latency_seconds);
  out << "queries: " << report.outcomes.size()
      << "  mean latency (s): " << buf << '\n';
  return out.str();
}

nlohmann::json EvalReportToJson(const EvalReport& report) {
  nlohmann::json queries = nlohmann::json::array();
  for (const QueryOutcome& o : report.outcomes) {
    queries.push_back({{"query", o.query},
                       {"expected_id", o.expected_id},
                       {"rank", o.rank},
                       {"latency_seconds", o.latency_seconds}});
  }
  return {{"positions", report.positions},
          {"frequency", report.frequency},
          {"cumulative", report.cumulative},
          {"query_count", report.outcomes.size()},
          {"mean_latency_seconds", report.mean_latency_seconds},
          {"missing_ids", report.missing_ids},
          {"queries", std::move(queries)}};
}

}  // namespace ccss
