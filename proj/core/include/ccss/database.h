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

#ifndef CCSS_DATABASE_H_
#define CCSS_DATABASE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ccss/contour.h"
#include "ccss/descriptor.h"
#include "ccss/mask.h"
#include "ccss/matching.h"
#include "ccss/morphology.h"

namespace ccss {

inline constexpr int kDatabaseFormatVersion = 1;

// Everything that shapes a descriptor. Stored with the database so queries
// are described exactly like the models.
struct DescriptorParams {
  std::size_t samples = kDefaultSamples;
  double tau = kDefaultConcavityThreshold;
  double eps = kCurvatureEpsilon;
  std::size_t max_rows = kDefaultMaxRows;
  PreprocessParams preprocess;
};

struct ModelMetadata {
  std::string id;
  std::string display_name;
  std::string class_name;
  std::string source_path;
};

struct ModelRecord {
  ModelMetadata meta;
  NormalizedSilhouette silhouette;
  CCSSImage descriptor;           // thresholded
  CCSSImage descriptor_mirrored;  // thresholded, horizontal mirror
};

// Silhouette of a raw mask: preprocess, trace, resample.
NormalizedSilhouette SilhouetteFromMask(const BinaryMask& mask,
                                        const DescriptorParams& params);

struct Description {
  NormalizedSilhouette silhouette;
  CCSSImage descriptor;
  CCSSImage descriptor_mirrored;
};

// Thresholded descriptors of a silhouette and of its mirror.
Description Describe(const NormalizedSilhouette& silhouette,
                     const ScaleSchedule& schedule,
                     const DescriptorParams& params);

struct RankedList {
  std::vector<MatchResult> entries;  // ascending cost, ties by id
};

struct IngestItem {
  std::string mask_path;
  ModelMetadata meta;
};

struct IngestFailure {
  std::string id;
  std::string mask_path;
  std::string reason;
};

class ModelDatabase {
 public:
  ModelDatabase() = default;
  ModelDatabase(DescriptorParams params, ScaleSchedule schedule);

  // Ingests a batch. The shared schedule is sized so the slowest-to-convexify
  // silhouette of the batch reaches convexity (capped at params.max_rows).
  // Failing items are reported and skipped.
  static ModelDatabase Build(const std::vector<IngestItem>& items,
                             const DescriptorParams& params,
                             std::vector<IngestFailure>* failures = nullptr);
  // As Build, for masks already in memory (paired with their metadata).
  static ModelDatabase BuildFromMasks(
      const std::vector<std::pair<ModelMetadata, BinaryMask>>& items,
      const DescriptorParams& params,
      std::vector<IngestFailure>* failures = nullptr);

  // Single-model ingestion on the existing schedule. On error the database is
  // left unchanged.
  const ModelRecord& Ingest(const std::string& mask_path,
                            const ModelMetadata& meta);
  const ModelRecord& IngestMask(const BinaryMask& mask,
                                const ModelMetadata& meta);

  // Throws kInvalidArgument on duplicate ids or a foreign schedule.
  void AddRecord(ModelRecord record);

  // Ranks every model by the lower of its direct and mirrored cost against
  // the target. Models are scored in parallel; the output is independent of
  // the thread count. Throws kEmptyDatabase for an empty database.
  RankedList Query(const BinaryMask& target, const MatchParams& params,
                   unsigned threads = 0) const;
  RankedList QueryDescriptor(const CCSSImage& target, const MatchParams& params,
                             unsigned threads = 0) const;
  Description DescribeMask(const BinaryMask& mask) const;

  const ModelRecord* Find(const std::string& id) const;
  const std::vector<ModelRecord>& records() const { return records_; }
  const DescriptorParams& params() const { return params_; }
  const ScaleSchedule& schedule() const { return schedule_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Layout: <dir>/index.json plus <dir>/models/<id>.json.
  void Save(const std::string& dir) const;
  // All-or-nothing: throws kParse / kVersionMismatch / kFileNotFound without
  // returning a partially loaded database.
  static ModelDatabase Load(const std::string& dir);

 private:
  DescriptorParams params_;
  ScaleSchedule schedule_;
  std::vector<ModelRecord> records_;
};

// Ids become file names, so they are restricted to [A-Za-z0-9._-].
bool IsValidModelId(const std::string& id);

}  // namespace ccss

#endif  // CCSS_DATABASE_H_
