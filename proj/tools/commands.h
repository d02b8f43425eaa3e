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

#ifndef CCSS_TOOLS_COMMANDS_H_
#define CCSS_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccss/database.h"
#include "ccss/eval.h"
#include "ccss/mask.h"
#include "ccss/matching.h"

namespace ccss::cli {

inline constexpr std::size_t kDefaultTopK = 6;

// Flags shared by every subcommand. Descriptor-shaping values left unset
// fall back to those stored with the database.
struct CommonOptions {
  double alpha = 0.2;
  std::optional<double> sigma_gain;  // default 70 * alpha
  std::optional<double> tau;
  std::optional<int> se_radius;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> max_rows;
  std::size_t top_k = kDefaultTopK;

  MatchParams Match() const;
  DescriptorParams Descriptor(const DescriptorParams& base = {}) const;
};

// Loads a database and applies query-time overrides: a larger tau
// re-thresholds the stored descriptors, se_radius changes only the target's
// preprocessing. Smaller tau or a different sample count need a rebuild and
// raise kInvalidArgument.
// The loaded database is shared when no re-thresholding is needed.
struct PreparedDatabase {
  std::shared_ptr<const ModelDatabase> db;
  PreprocessParams target_preprocess;
};
PreparedDatabase PrepareDatabase(std::shared_ptr<const ModelDatabase> db,
                                 const CommonOptions& opts);

// Stable identifier of a query: FNV-1a over the mask raster and the matching
// parameters.
std::string QueryId(const BinaryMask& mask, const CommonOptions& opts);

struct QueryResponse {
  std::string query_id;
  RankedList ranked;
};
QueryResponse RunQuery(const PreparedDatabase& prepared, const BinaryMask& mask,
                       const CommonOptions& opts);

// The machine-readable ranked list. CLI and HTTP service both emit
// RankedJson(...).dump() so identical inputs give identical bytes.
nlohmann::json RankedJson(const PreparedDatabase& prepared,
                          const QueryResponse& response,
                          const CommonOptions& opts);
std::string FormatRankedTable(const PreparedDatabase& prepared,
                              const QueryResponse& response,
                              std::size_t top_k);

// Manifest inside the masks directory: manifest.json holding an array (or
// {"models": [...]}) of {"id", "file", "name", "class"}. Without a manifest
// every .pgm/.png file is ingested with its stem as id.
std::vector<IngestItem> ReadBuildManifest(const std::string& masks_dir);

struct EvalQuery {
  std::string mask_path;
  std::string model_id;
};
// {"queries": [{"mask": path, "model_id": id}, ...]} or a bare array; paths
// resolve against the manifest's directory.
std::vector<EvalQuery> ReadEvalManifest(const std::string& manifest_path);

EvalReport RunEvaluation(const PreparedDatabase& prepared,
                         const std::vector<EvalQuery>& queries,
                         const CommonOptions& opts);

// Subcommands. Each returns the process exit status and reports to the given
// streams.
int CmdBuild(const std::string& db_dir, const std::string& masks_dir,
             const CommonOptions& opts, std::ostream& out, std::ostream& err);
int CmdQuery(const std::string& db_dir, const std::string& mask_path,
             bool json, const CommonOptions& opts, std::ostream& out,
             std::ostream& err);
int CmdRender(const std::string& mask_path, const std::string& out_png,
              const std::string& mode, const CommonOptions& opts,
              std::ostream& out, std::ostream& err);
int CmdEval(const std::string& db_dir, const std::string& manifest_path,
            bool json, const CommonOptions& opts, std::ostream& out,
            std::ostream& err);
// Writes a synthetic corpus (masks + manifest.json) and, when queries > 0, a
// queries/ directory of perturbed masks with queries.json.
int CmdSynth(const std::string& out_dir, std::size_t count, uint64_t seed,
             std::size_t queries, std::ostream& out, std::ostream& err);

}  // namespace ccss::cli

#endif  // CCSS_TOOLS_COMMANDS_H_
