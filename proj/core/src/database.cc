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

#include "ccss/database.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "ccss/errors.h"
#include "ccss/image_io.h"
#include "ccss/parallel.h"
#include "ccss/serialization.h"

namespace ccss {

namespace fs = std::filesystem;
using nlohmann::json;

bool IsValidModelId(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
           (ch >= '0' && ch <= '9') || ch == '.' || ch == '_' || ch == '-';
  });
}

NormalizedSilhouette SilhouetteFromMask(const BinaryMask& mask,
                                        const DescriptorParams& params) {
  const BinaryMask clean = Preprocess(mask, params.preprocess);
  return Resample(ExtractContour(clean), params.samples);
}

Description Describe(const NormalizedSilhouette& silhouette,
                     const ScaleSchedule& schedule,
                     const DescriptorParams& params) {
  Description d;
  d.silhouette = silhouette;
  d.descriptor = ThresholdShallow(
      BuildCcss(silhouette, schedule, params.eps), params.tau);
  d.descriptor_mirrored = ThresholdShallow(
      BuildCcss(MirrorHorizontally(silhouette), schedule, params.eps),
      params.tau);
  return d;
}

ModelDatabase::ModelDatabase(DescriptorParams params, ScaleSchedule schedule)
    : params_(std::move(params)), schedule_(std::move(schedule)) {}

namespace {

struct Pending {
  ModelMetadata meta;
  NormalizedSilhouette silhouette;
  std::size_t rows = 0;
};

ModelDatabase FinishBuild(std::vector<Pending> pending,
                          const DescriptorParams& params) {
  std::size_t rows = 1;
  for (const Pending& p : pending) rows = std::max(rows, p.rows);
  ModelDatabase db(params, ScaleSchedule::Uniform(params.samples, rows));
  for (Pending& p : pending) {
    Description d = Describe(p.silhouette, db.schedule(), params);
    db.AddRecord({std::move(p.meta), std::move(d.silhouette),
                  std::move(d.descriptor), std::move(d.descriptor_mirrored)});
  }
  return db;
}

template <typename LoadMask>
ModelDatabase BuildImpl(const std::vector<IngestItem>& items,
                        const DescriptorParams& params,
                        std::vector<IngestFailure>* failures,
                        const LoadMask& load_mask) {
  std::vector<Pending> pending;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const IngestItem& item = items[i];
    try {
      if (!IsValidModelId(item.meta.id)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "invalid model id '" + item.meta.id + "'");
      }
      if (seen.count(item.meta.id) != 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate model id " + item.meta.id);
      }
      NormalizedSilhouette s = SilhouetteFromMask(load_mask(i), params);
      const std::size_t rows = RowsUntilConvex(s, params.max_rows, params.eps);
      seen.insert(item.meta.id);
      pending.push_back({item.meta, std::move(s), rows});
    } catch (const Error& e) {
      if (failures != nullptr) {
        failures->push_back({item.meta.id, item.mask_path, e.what()});
      }
    }
  }
  return FinishBuild(std::move(pending), params);
}

}  // namespace

ModelDatabase ModelDatabase::Build(const std::vector<IngestItem>& items,
                                   const DescriptorParams& params,
                                   std::vector<IngestFailure>* failures) {
  return BuildImpl(items, params, failures, [&](std::size_t i) {
    return ReadMask(items[i].mask_path);
  });
}

ModelDatabase ModelDatabase::BuildFromMasks(
    const std::vector<std::pair<ModelMetadata, BinaryMask>>& items,
    const DescriptorParams& params, std::vector<IngestFailure>* failures) {
  std::vector<IngestItem> listing;
  listing.reserve(items.size());
  for (const auto& [meta, mask] : items) {
    listing.push_back({meta.source_path, meta});
  }
  return BuildImpl(listing, params, failures,
                   [&](std::size_t i) -> const BinaryMask& {
                     return items[i].second;
                   });
}

const ModelRecord& ModelDatabase::Ingest(const std::string& mask_path,
                                         const ModelMetadata& meta) {
  return IngestMask(ReadMask(mask_path), meta);
}

const ModelRecord& ModelDatabase::IngestMask(const BinaryMask& mask,
                                             const ModelMetadata& meta) {
  if (!IsValidModelId(meta.id)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid model id '" + meta.id + "'");
  }
  if (Find(meta.id) != nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate model id " + meta.id);
  }
  if (schedule_.sigmas.empty()) {
    schedule_ = ScaleSchedule::Uniform(params_.samples, params_.max_rows);
  }
  Description d = Describe(SilhouetteFromMask(mask, params_), schedule_, params_);
  AddRecord({meta, std::move(d.silhouette), std::move(d.descriptor),
             std::move(d.descriptor_mirrored)});
  return records_.back();
}

void ModelDatabase::AddRecord(ModelRecord record) {
  if (!IsValidModelId(record.meta.id)) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid model id '" + record.meta.id + "'");
  }
  if (Find(record.meta.id) != nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate model id " + record.meta.id);
  }
  if (!(record.descriptor.schedule == schedule_) ||
      !(record.descriptor_mirrored.schedule == schedule_)) {
    throw Error(ErrorCode::kScheduleMismatch,
                "record " + record.meta.id + " uses a foreign schedule");
  }
  records_.push_back(std::move(record));
}

const ModelRecord* ModelDatabase::Find(const std::string& id) const {
  for (const ModelRecord& r : records_) {
    if (r.meta.id == id) return &r;
  }
  return nullptr;
}

Description ModelDatabase::DescribeMask(const BinaryMask& mask) const {
  return Describe(SilhouetteFromMask(mask, params_), schedule_, params_);
}

RankedList ModelDatabase::Query(const BinaryMask& target,
                                const MatchParams& params,
                                unsigned threads) const {
  if (records_.empty()) throw Error(ErrorCode::kEmptyDatabase, "no models");
  const NormalizedSilhouette s = SilhouetteFromMask(target, params_);
  const CCSSImage descriptor =
      ThresholdShallow(BuildCcss(s, schedule_, params_.eps), params_.tau);
  return QueryDescriptor(descriptor, params, threads);
}

RankedList ModelDatabase::QueryDescriptor(const CCSSImage& target,
                                          const MatchParams& params,
                                          unsigned threads) const {
  if (records_.empty()) throw Error(ErrorCode::kEmptyDatabase, "no models");
  params.Validate();
  RankedList ranked;
  ranked.entries.resize(records_.size());
  ParallelFor(
      records_.size(),
      [&](std::size_t i) {
        const ModelRecord& r = records_[i];
        MatchResult direct = MatchCost(target, r.descriptor, params);
        MatchResult flipped = MatchCost(target, r.descriptor_mirrored, params);
        flipped.mirrored = true;
        MatchResult best =
            flipped.total_cost < direct.total_cost ? flipped : direct;
        best.model_id = r.meta.id;
        ranked.entries[i] = std::move(best);
      },
      threads);
  std::sort(ranked.entries.begin(), ranked.entries.end(),
            [](const MatchResult& a, const MatchResult& b) {
              if (a.total_cost != b.total_cost) return a.total_cost < b.total_cost;
              return a.model_id < b.model_id;
            });
  return ranked;
}

namespace {

json ParamsToJson(const DescriptorParams& p) {
  return json{{"samples", p.samples},
              {"tau", p.tau},
              {"eps", p.eps},
              {"max_rows", p.max_rows},
              {"opening_radius", p.preprocess.opening_radius},
              {"closing_radius", p.preprocess.closing_radius}};
}

DescriptorParams ParamsFromJson(const json& j) {
  DescriptorParams p;
  p.samples = j.at("samples").get<std::size_t>();
  p.tau = j.at("tau").get<double>();
  p.eps = j.at("eps").get<double>();
  p.max_rows = j.at("max_rows").get<std::size_t>();
  p.preprocess.opening_radius = j.at("opening_radius").get<int>();
  p.preprocess.closing_radius = j.at("closing_radius").get<int>();
  return p;
}

void WriteJson(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

json ReadJson(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void CheckVersion(const json& doc, const std::string& expected_format,
                  const fs::path& path) {
  if (!doc.is_object() || !doc.contains("format") ||
      !doc.contains("format_version")) {
    throw Error(ErrorCode::kParse, path.string() + ": missing format header");
  }
  if (doc.at("format") != expected_format) {
    throw Error(ErrorCode::kParse, path.string() + ": not a " + expected_format);
  }
  if (doc.at("format_version") != kDatabaseFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path.string() + ": format version " +
                    doc.at("format_version").dump() + ", expected " +
                    std::to_string(kDatabaseFormatVersion));
  }
}

}  // namespace

void ModelDatabase::Save(const std::string& dir) const {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root / "models", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  json models = json::array();
  for (const ModelRecord& r : records_) {
    const std::string file = "models/" + r.meta.id + ".json";
    WriteJson(root / file,
              json{{"format", "ccss-model"},
                   {"format_version", kDatabaseFormatVersion},
                   {"id", r.meta.id},
                   {"silhouette", SilhouetteToJson(r.silhouette)},
                   {"descriptor", CcssToJson(r.descriptor)},
                   {"descriptor_mirrored", CcssToJson(r.descriptor_mirrored)}});
    models.push_back(json{{"id", r.meta.id},
                          {"display_name", r.meta.display_name},
                          {"class_name", r.meta.class_name},
                          {"source_path", r.meta.source_path},
                          {"file", file}});
  }
  WriteJson(root / "index.json",
            json{{"format", "ccss-database"},
                 {"format_version", kDatabaseFormatVersion},
                 {"params", ParamsToJson(params_)},
                 {"schedule", schedule_.sigmas},
                 {"models", std::move(models)}});
}

ModelDatabase ModelDatabase::Load(const std::string& dir) {
  const fs::path root(dir);
  const fs::path index_path = root / "index.json";
  const json index = ReadJson(index_path);
  CheckVersion(index, "ccss-database", index_path);
  try {
    ScaleSchedule schedule;
    schedule.sigmas = index.at("schedule").get<std::vector<double>>();
    ModelDatabase db(ParamsFromJson(index.at("params")), std::move(schedule));
    for (const json& entry : index.at("models")) {
      ModelRecord r;
      r.meta.id = entry.at("id").get<std::string>();
      r.meta.display_name = entry.at("display_name").get<std::string>();
      r.meta.class_name = entry.at("class_name").get<std::string>();
      r.meta.source_path = entry.at("source_path").get<std::string>();
      if (!IsValidModelId(r.meta.id)) {
        throw Error(ErrorCode::kParse, "invalid model id in index: " + r.meta.id);
      }
      const fs::path model_path = root / entry.at("file").get<std::string>();
      const json doc = ReadJson(model_path);
      CheckVersion(doc, "ccss-model", model_path);
      if (doc.at("id") != r.meta.id) {
        throw Error(ErrorCode::kParse, model_path.string() + ": id mismatch");
      }
      r.silhouette = SilhouetteFromJson(doc.at("silhouette"));
      r.descriptor = CcssFromJson(doc.at("descriptor"));
      r.descriptor_mirrored = CcssFromJson(doc.at("descriptor_mirrored"));
      db.AddRecord(std::move(r));
    }
    return db;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, index_path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kScheduleMismatch ||
        e.code() == ErrorCode::kInvalidArgument) {
      throw Error(ErrorCode::kParse, e.what());
    }
    throw;
  }
}

}  // namespace ccss
