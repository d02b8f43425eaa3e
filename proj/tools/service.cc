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

#include "service.h"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <utility>

#include <httplib.h>

#include "ccss/errors.h"
#include "ccss/image_io.h"
#include "ccss/render.h"

namespace ccss::cli {

using nlohmann::json;

namespace {

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch())
                      .count() %
                  1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  const std::size_t n = std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  std::snprintf(buf + n, sizeof(buf) - n, ".%03dZ", static_cast<int>(ms));
  return buf;
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyMask:
    case ErrorCode::kDegenerateObject:
    case ErrorCode::kDegenerateSilhouette:
    case ErrorCode::kSingularPoint:
    case ErrorCode::kDegenerateChord:
    case ErrorCode::kParse:
      return 400;
    default:
      return 500;
  }
}

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, const std::string& message,
               const std::string& code = "") {
  json body = {{"error", message}};
  if (!code.empty()) body["code"] = code;
  SendJson(res, status, body);
}

// Form fields of a multipart upload take precedence over URL parameters.
std::optional<std::string> Field(const httplib::Request& req,
                                 const std::string& name) {
  if (req.has_file(name)) return req.get_file_value(name).content;
  if (req.has_param(name)) return req.get_param_value(name);
  return std::nullopt;
}

template <typename T>
std::optional<T> ParseNumber(const httplib::Request& req,
                             const std::string& name) {
  const auto raw = Field(req, name);
  if (!raw) return std::nullopt;
  T value{};
  const char* end = raw->data() + raw->size();
  const auto [ptr, ec] = std::from_chars(raw->data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kInvalidArgument,
                "parameter " + name + " is not a number: " + *raw);
  }
  return value;
}

CommonOptions RequestOptions(const httplib::Request& req,
                             const CommonOptions& defaults) {
  CommonOptions o = defaults;
  if (auto v = ParseNumber<double>(req, "alpha")) o.alpha = *v;
  if (auto v = ParseNumber<double>(req, "sigma_gain")) o.sigma_gain = *v;
  if (auto v = ParseNumber<double>(req, "tau")) o.tau = *v;
  if (auto v = ParseNumber<int>(req, "se_radius")) o.se_radius = *v;
  if (auto v = ParseNumber<std::size_t>(req, "samples")) o.samples = *v;
  if (auto v = ParseNumber<std::size_t>(req, "top_k")) o.top_k = *v;
  if (o.se_radius && *o.se_radius < 0) {
    throw Error(ErrorCode::kInvalidArgument, "se_radius must be >= 0");
  }
  o.Match();  // validates alpha and sigma_gain
  return o;
}

json Polyline(const NormalizedSilhouette& s) {
  json points = json::array();
  for (const Point2& p : s.points) points.push_back({p.x, p.y});
  return points;
}

}  // namespace

DecisionLog::DecisionLog(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    const json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) continue;
    const auto it = entry.find("idempotency_key");
    if (it != entry.end() && it->is_string()) {
      by_key_.emplace(it->get<std::string>(), entry);
    }
  }
}

DecisionLog::Result DecisionLog::Append(json entry) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::string key;
  if (const auto it = entry.find("idempotency_key");
      it != entry.end() && it->is_string()) {
    key = it->get<std::string>();
    if (const auto found = by_key_.find(key); found != by_key_.end()) {
      return {found->second, false};
    }
  }
  std::ofstream out(path_, std::ios::app);
  out << entry.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + path_);
  if (!key.empty()) by_key_.emplace(key, entry);
  return {std::move(entry), true};
}

QueryService::QueryService(ServiceOptions options, Loader loader)
    : options_(std::move(options)),
      loader_(std::move(loader)),
      server_(std::make_unique<httplib::Server>()),
      log_(options_.decision_log) {
  Routes();
}

QueryService::~QueryService() {
  Stop();
  if (loader_thread_.joinable()) loader_thread_.join();
}

void QueryService::StartLoading() {
  loader_thread_ = std::thread([this] {
    try {
      auto db = std::make_shared<const ModelDatabase>(loader_());
      std::lock_guard<std::mutex> lock(state_mutex_);
      db_ = std::move(db);
      ready_ = true;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(state_mutex_);
      load_error_ = e.what();
    }
  });
}

bool QueryService::Ready() const { return ready_; }

void QueryService::WaitLoaded() {
  if (loader_thread_.joinable()) loader_thread_.join();
}

int QueryService::StartOnAnyPort(const std::string& host) {
  const int port = server_->bind_to_any_port(host);
  if (port <= 0) return port;
  server_thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

bool QueryService::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

void QueryService::Stop() {
  server_->stop();
  if (server_thread_.joinable()) server_thread_.join();
}

void QueryService::Routes() {
  httplib::Server& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers",
                          "Content-Type, Idempotency-Key"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                             std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      SendError(res, StatusFor(e.code()), e.what(), ErrorCodeName(e.code()));
    } catch (const std::exception& e) {
      SendError(res, 500, e.what());
    }
  });

  // Everything except health answers 503 while the database loads.
  auto database = [this](httplib::Response& res)
      -> std::shared_ptr<const ModelDatabase> {
    std::lock_guard<std::mutex> lock(state_mutex_);
    if (!db_) {
      SendError(res, 503, load_error_ ? "database failed to load: " + *load_error_
                                      : "database is loading");
    }
    return db_;
  };

  s.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(state_mutex_);
    if (db_) {
      SendJson(res, 200, {{"status", "ok"}, {"models", db_->size()}});
    } else if (load_error_) {
      SendJson(res, 503, {{"status", "error"}, {"error", *load_error_}});
    } else {
      SendJson(res, 503, {{"status", "loading"}});
    }
  });

  s.Post("/api/query", [this, database](const httplib::Request& req,
                                        httplib::Response& res) {
    const auto db = database(res);
    if (!db) return;
    std::string bytes;
    if (req.has_file("mask")) {
      bytes = req.get_file_value("mask").content;
    } else if (!req.is_multipart_form_data()) {
      bytes = req.body;
    }
    if (bytes.empty()) return SendError(res, 400, "missing mask upload");
    CommonOptions opts = RequestOptions(req, options_.defaults);
    const int threshold =
        ParseNumber<int>(req, "threshold").value_or(kDefaultMaskThreshold);
    BinaryMask mask;
    try {
      mask = DecodeMask(std::vector<uint8_t>(bytes.begin(), bytes.end()),
                        threshold);
    } catch (const Error& e) {
      return SendError(res, 400, std::string("malformed mask: ") + e.what(),
                       ErrorCodeName(e.code()));
    }
    const PreparedDatabase prepared = PrepareDatabase(db, opts);
    const QueryResponse response = RunQuery(prepared, mask, opts);
    SendJson(res, 200, RankedJson(prepared, response, opts));
  });

  s.Get("/api/models", [database](const httplib::Request&,
                                  httplib::Response& res) {
    const auto db = database(res);
    if (!db) return;
    json list = json::array();
    for (const ModelRecord& r : db->records()) {
      list.push_back({{"id", r.meta.id},
                      {"name", r.meta.display_name},
                      {"class", r.meta.class_name}});
    }
    SendJson(res, 200, {{"models", list}});
  });

  s.Get("/api/models/:id", [database](const httplib::Request& req,
                                      httplib::Response& res) {
    const auto db = database(res);
    if (!db) return;
    const ModelRecord* r = db->Find(req.path_params.at("id"));
    if (r == nullptr) return SendError(res, 404, "unknown model id");
    const NormalizedSilhouette& sil = r->silhouette;
    SendJson(res, 200,
             {{"id", r->meta.id},
              {"name", r->meta.display_name},
              {"class", r->meta.class_name},
              {"source_path", r->meta.source_path},
              {"descriptor_points", r->descriptor.PointCount()},
              {"silhouette",
               {{"points", Polyline(sil)},
                {"bow_index", sil.bow_index},
                {"stern_index", sil.stern_index},
                {"origin", {sil.origin.x, sil.origin.y}},
                {"pixel_scale", sil.pixel_scale}}}});
  });

  s.Get("/api/models/:id/render", [database](const httplib::Request& req,
                                             httplib::Response& res) {
    const auto db = database(res);
    if (!db) return;
    const ModelRecord* r = db->Find(req.path_params.at("id"));
    if (r == nullptr) return SendError(res, 404, "unknown model id");
    const std::string mode =
        req.has_param("mode") ? req.get_param_value("mode") : "ccss";
    Rendering rendering;
    if (mode == "ccss") {
      rendering = RenderCcss(r->descriptor);
    } else if (mode == "css") {
      rendering = RenderCss(
          BuildCss(r->silhouette, db->schedule(), db->params().eps));
    } else if (mode == "evolution") {
      rendering = RenderEvolution(r->silhouette, db->schedule(),
                                  DefaultEvolutionRows(db->schedule()));
    } else {
      return SendError(res, 400, "mode must be css, ccss or evolution");
    }
    const std::vector<uint8_t> png = EncodePng(rendering.image);
    res.set_content(std::string(png.begin(), png.end()), "image/png");
  });

  s.Post("/api/decisions", [this, database](const httplib::Request& req,
                                            httplib::Response& res) {
    const auto db = database(res);
    if (!db) return;
    const json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      return SendError(res, 400, "body must be a JSON object");
    }
    const auto text = [&body](const char* key) -> std::optional<std::string> {
      const auto it = body.find(key);
      if (it == body.end() || it->is_null()) return std::string();
      if (!it->is_string()) return std::nullopt;
      return it->get<std::string>();
    };
    const auto query_id = text("query_id");
    const auto model_id = text("model_id");
    const auto note = text("note");
    auto key = text("idempotency_key");
    if (!query_id || !model_id || !note || !key) {
      return SendError(res, 400, "decision fields must be strings");
    }
    if (query_id->empty() || model_id->empty()) {
      return SendError(res, 400, "query_id and model_id are required");
    }
    if (key->empty() && req.has_header("Idempotency-Key")) {
      key = req.get_header_value("Idempotency-Key");
    }
    if (db->Find(*model_id) == nullptr) {
      return SendError(res, 404, "unknown model id");
    }
    json entry = {{"query_id", *query_id},
                  {"model_id", *model_id},
                  {"timestamp", UtcTimestamp()},
                  {"note", *note}};
    if (!key->empty()) entry["idempotency_key"] = *key;
    const DecisionLog::Result result = log_.Append(std::move(entry));
    SendJson(res, result.created ? 201 : 200,
             {{"created", result.created}, {"decision", result.entry}});
  });

  if (!options_.ui_dir.empty()) s.set_mount_point("/", options_.ui_dir);
}

}  // namespace ccss::cli
