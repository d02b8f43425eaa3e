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

#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ccss/errors.h"
#include "ccss/image_io.h"
#include "ccss/render.h"
#include "ccss/synth.h"

namespace ccss::cli {

namespace fs = std::filesystem;
using nlohmann::json;

MatchParams CommonOptions::Match() const {
  MatchParams p;
  p.alpha = alpha;
  p.sigma_gain = sigma_gain.value_or(70.0 * alpha);
  p.Validate();
  return p;
}

DescriptorParams CommonOptions::Descriptor(const DescriptorParams& base) const {
  DescriptorParams p = base;
  if (tau) p.tau = *tau;
  if (se_radius) {
    p.preprocess.opening_radius = *se_radius;
    p.preprocess.closing_radius = *se_radius;
  }
  if (samples) p.samples = *samples;
  if (max_rows) p.max_rows = *max_rows;
  if (p.tau < 0.0) throw Error(ErrorCode::kInvalidArgument, "--tau must be >= 0");
  if (p.samples < kMinSamples) {
    throw Error(ErrorCode::kInvalidArgument, "--samples must be >= 32");
  }
  if (p.preprocess.opening_radius < 0) {
    throw Error(ErrorCode::kInvalidArgument, "--se-radius must be >= 0");
  }
  if (p.max_rows < 1) throw Error(ErrorCode::kInvalidArgument, "--max-rows must be >= 1");
  return p;
}

PreparedDatabase PrepareDatabase(std::shared_ptr<const ModelDatabase> db,
                                 const CommonOptions& opts) {
  if (!db) throw Error(ErrorCode::kInvalidArgument, "no database");
  const DescriptorParams& stored = db->params();
  if (opts.samples && *opts.samples != stored.samples) {
    throw Error(ErrorCode::kInvalidArgument,
                "database was built with --samples " +
                    std::to_string(stored.samples) + "; rebuild to change it");
  }
  PreparedDatabase out;
  out.target_preprocess = stored.preprocess;
  if (opts.se_radius) {
    out.target_preprocess.opening_radius = *opts.se_radius;
    out.target_preprocess.closing_radius = *opts.se_radius;
  }
  if (opts.tau && *opts.tau != stored.tau) {
    if (*opts.tau < stored.tau) {
      throw Error(ErrorCode::kInvalidArgument,
                  "database descriptors were thresholded at tau " +
                      std::to_string(stored.tau) +
                      "; a smaller --tau needs a rebuild");
    }
    DescriptorParams params = stored;
    params.tau = *opts.tau;
    auto filtered = std::make_shared<ModelDatabase>(params, db->schedule());
    for (const ModelRecord& r : db->records()) {
      filtered->AddRecord({r.meta, r.silhouette,
                          ThresholdShallow(r.descriptor, params.tau),
                          ThresholdShallow(r.descriptor_mirrored, params.tau)});
    }
    out.db = std::move(filtered);
  } else {
    out.db = std::move(db);
  }
  return out;
}

std::string QueryId(const BinaryMask& mask, const CommonOptions& opts) {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  const int dims[2] = {mask.width(), mask.height()};
  mix(dims, sizeof(dims));
  mix(mask.bits().data(), mask.bits().size());
  const MatchParams m = opts.Match();
  std::ostringstream params;
  params.precision(17);
  params << m.alpha << '|' << m.sigma_gain << '|' << opts.tau.value_or(-1.0)
         << '|' << opts.se_radius.value_or(-1);
  const std::string s = params.str();
  mix(s.data(), s.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

QueryResponse RunQuery(const PreparedDatabase& prepared, const BinaryMask& mask,
                       const CommonOptions& opts) {
  DescriptorParams params = prepared.db->params();
  params.preprocess = prepared.target_preprocess;
  const NormalizedSilhouette s = SilhouetteFromMask(mask, params);
  const CCSSImage descriptor = ThresholdShallow(
      BuildCcss(s, prepared.db->schedule(), params.eps), params.tau);
  return {QueryId(mask, opts),
          prepared.db->QueryDescriptor(descriptor, opts.Match())};
}

json RankedJson(const PreparedDatabase& prepared, const QueryResponse& response,
                const CommonOptions& opts) {
  const MatchParams m = opts.Match();
  const DescriptorParams& d = prepared.db->params();
  json results = json::array();
  const std::size_t k = std::min(opts.top_k, response.ranked.entries.size());
  for (std::size_t i = 0; i < k; ++i) {
    const MatchResult& r = response.ranked.entries[i];
    const ModelRecord* rec = prepared.db->Find(r.model_id);
    results.push_back({{"rank", i + 1},
                       {"id", r.model_id},
                       {"name", rec ? rec->meta.display_name : ""},
                       {"class", rec ? rec->meta.class_name : ""},
                       {"cost", r.total_cost},
                       {"mirrored", r.mirrored},
                       {"shift", r.shift_applied}});
  }
  return {{"query_id", response.query_id},
          {"params",
           {{"alpha", m.alpha},
            {"sigma_gain", m.sigma_gain},
            {"penalty_unit", m.penalty_unit},
            {"tau", d.tau},
            {"se_radius", prepared.target_preprocess.opening_radius},
            {"samples", d.samples}}},
          {"model_count", response.ranked.entries.size()},
          {"results", std::move(results)}};
}

std::string FormatRankedTable(const PreparedDatabase& prepared,
                              const QueryResponse& response,
                              std::size_t top_k) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-5s %-20s %-28s %-16s %12s\n", "rank",
                "id", "name", "class", "cost");
  out << line;
  const std::size_t k = std::min(top_k, response.ranked.entries.size());
  for (std::size_t i = 0; i < k; ++i) {
    const MatchResult& r = response.ranked.entries[i];
    const ModelRecord* rec = prepared.db->Find(r.model_id);
    std::snprintf(line, sizeof(line), "%-5zu %-20s %-28s %-16s %12.6f%s\n",
                  i + 1, r.model_id.c_str(),
                  rec ? rec->meta.display_name.c_str() : "",
                  rec ? rec->meta.class_name.c_str() : "", r.total_cost,
                  r.mirrored ? " (mirrored)" : "");
    out << line;
  }
  return out.str();
}

namespace {

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

bool IsMaskFile(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".png";
}

}  // namespace

std::vector<IngestItem> ReadBuildManifest(const std::string& masks_dir) {
  const fs::path dir(masks_dir);
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kFileNotFound, "not a directory: " + masks_dir);
  }
  std::vector<IngestItem> items;
  const fs::path manifest = dir / "manifest.json";
  if (fs::exists(manifest)) {
    const json doc = ReadJsonFile(manifest);
    const json& list = doc.is_object() ? doc.at("models") : doc;
    try {
      for (const json& e : list) {
        IngestItem item;
        item.meta.id = e.at("id").get<std::string>();
        item.mask_path = (dir / e.at("file").get<std::string>()).string();
        item.meta.display_name = e.value("name", item.meta.id);
        item.meta.class_name = e.value("class", std::string());
        item.meta.source_path = item.mask_path;
        items.push_back(std::move(item));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, manifest.string() + ": " + e.what());
    }
    return items;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && IsMaskFile(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    IngestItem item;
    item.meta.id = f.stem().string();
    item.meta.display_name = item.meta.id;
    item.mask_path = f.string();
    item.meta.source_path = item.mask_path;
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<EvalQuery> ReadEvalManifest(const std::string& manifest_path) {
  const fs::path path(manifest_path);
  const json doc = ReadJsonFile(path);
  const json& list = doc.is_object() ? doc.at("queries") : doc;
  std::vector<EvalQuery> out;
  try {
    for (const json& e : list) {
      fs::path mask = e.at("mask").get<std::string>();
      if (mask.is_relative()) mask = path.parent_path() / mask;
      out.push_back({mask.string(), e.at("model_id").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return out;
}

EvalReport RunEvaluation(const PreparedDatabase& prepared,
                         const std::vector<EvalQuery>& queries,
                         const CommonOptions& opts) {
  std::vector<QueryOutcome> outcomes;
  std::vector<std::string> missing;
  for (const EvalQuery& q : queries) {
    if (prepared.db->Find(q.model_id) == nullptr) {
      missing.push_back(q.model_id);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const QueryResponse response = RunQuery(prepared, ReadMask(q.mask_path), opts);
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < response.ranked.entries.size(); ++i) {
      if (response.ranked.entries[i].model_id == q.model_id) {
        rank = i + 1;
        break;
      }
    }
    outcomes.push_back({q.mask_path, q.model_id, rank, seconds});
  }
  return SummarizeOutcomes(std::move(outcomes), std::move(missing));
}

int CmdBuild(const std::string& db_dir, const std::string& masks_dir,
             const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::vector<IngestItem> items = ReadBuildManifest(masks_dir);
    if (items.empty()) {
      err << "error: no masks found in " << masks_dir << '\n';
      return 1;
    }
    std::error_code ec;
    fs::create_directories(db_dir, ec);
    for (IngestItem& item : items) {
      // Stored relative to the database so the directory can be moved.
      const fs::path rel =
          fs::relative(fs::absolute(item.mask_path), fs::absolute(db_dir), ec);
      if (!ec && !rel.empty()) item.meta.source_path = rel.string();
    }
    std::vector<IngestFailure> failures;
    const ModelDatabase db =
        ModelDatabase::Build(items, opts.Descriptor(), &failures);
    for (const IngestFailure& f : failures) {
      err << "warning: skipped " << (f.id.empty() ? f.mask_path : f.id) << ": "
          << f.reason << '\n';
    }
    for (const ModelRecord& r : db.records()) {
      out << "ok " << r.meta.id << " (" << r.descriptor.PointCount()
          << " points)\n";
    }
    if (db.empty()) {
      err << "error: no model could be ingested\n";
      return 1;
    }
    db.Save(db_dir);
    out << "saved " << db.size() << " models, " << db.schedule().size()
        << " scale rows, to " << db_dir << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int CmdQuery(const std::string& db_dir, const std::string& mask_path,
             bool as_json, const CommonOptions& opts, std::ostream& out,
             std::ostream& err) {
  try {
    const PreparedDatabase prepared =
        PrepareDatabase(
        std::make_shared<const ModelDatabase>(ModelDatabase::Load(db_dir)), opts);
    const QueryResponse response =
        RunQuery(prepared, ReadMask(mask_path), opts);
    if (as_json) {
      out << RankedJson(prepared, response, opts).dump() << '\n';
    } else {
      out << "query " << response.query_id << " against "
          << prepared.db->size() << " models\n"
          << FormatRankedTable(prepared, response, opts.top_k);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int CmdRender(const std::string& mask_path, const std::string& out_png,
              const std::string& mode, const CommonOptions& opts,
              std::ostream& out, std::ostream& err) {
  try {
    if (mode != "css" && mode != "ccss" && mode != "evolution") {
      err << "error: --mode must be css, ccss or evolution\n";
      return 2;
    }
    const DescriptorParams params = opts.Descriptor();
    const NormalizedSilhouette s =
        SilhouetteFromMask(ReadMask(mask_path), params);
    const ScaleSchedule schedule = ScaleSchedule::Uniform(
        params.samples, RowsUntilConvex(s, params.max_rows, params.eps));
    Rendering r;
    if (mode == "css") {
      r = RenderCss(BuildCss(s, schedule, params.eps));
    } else if (mode == "ccss") {
      r = RenderCcss(
          ThresholdShallow(BuildCcss(s, schedule, params.eps), params.tau));
    } else {
      r = RenderEvolution(s, schedule, DefaultEvolutionRows(schedule));
    }
    WritePng(r.image, out_png);
    out << "wrote " << out_png << " (" << mode << ", " << r.markers
        << " markers, " << schedule.size() << " rows)\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int CmdEval(const std::string& db_dir, const std::string& manifest_path,
            bool as_json, const CommonOptions& opts, std::ostream& out,
            std::ostream& err) {
  try {
    const PreparedDatabase prepared =
        PrepareDatabase(
        std::make_shared<const ModelDatabase>(ModelDatabase::Load(db_dir)), opts);
    const EvalReport report =
        RunEvaluation(prepared, ReadEvalManifest(manifest_path), opts);
    for (const std::string& id : report.missing_ids) {
      err << "warning: ground-truth id not in database: " << id << '\n';
    }
    if (as_json) {
      out << EvalReportToJson(report).dump() << '\n';
    } else {
      out << FormatFrequencyTable(report);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int CmdSynth(const std::string& out_dir, std::size_t count, uint64_t seed,
             std::size_t queries, std::ostream& out, std::ostream& err) {
  try {
    const fs::path root(out_dir);
    fs::create_directories(root);
    const auto corpus = synth::GenerateCorpus(count, seed);
    json manifest = json::array();
    for (const auto& m : corpus) {
      const std::string file = m.meta.id + ".pgm";
      WriteMask(m.mask, (root / file).string());
      manifest.push_back({{"id", m.meta.id},
                          {"file", file},
                          {"name", m.meta.display_name},
                          {"class", m.meta.class_name}});
    }
    std::ofstream(root / "manifest.json") << manifest.dump(1) << '\n';
    out << "wrote " << corpus.size() << " masks to " << out_dir << '\n';
    if (queries > 0) {
      const fs::path qdir = root / "queries";
      fs::create_directories(qdir);
      json list = json::array();
      for (std::size_t i = 0; i < queries && i < corpus.size(); ++i) {
        const std::string file = "q-" + corpus[i].meta.id + ".pgm";
        WriteMask(synth::PerturbedQuery(corpus[i].design, seed * 7919 + i),
                  (qdir / file).string());
        list.push_back({{"mask", file}, {"model_id", corpus[i].meta.id}});
      }
      std::ofstream(qdir / "queries.json")
          << json{{"queries", list}}.dump(1) << '\n';
      out << "wrote " << list.size() << " perturbed queries to "
          << qdir.string() << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ccss::cli
