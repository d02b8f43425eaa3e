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

#ifndef CCSS_TOOLS_SERVICE_H_
#define CCSS_TOOLS_SERVICE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <map>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "commands.h"
#include "ccss/database.h"

namespace httplib {
class Server;
}

namespace ccss::cli {

// Append-only decision log: one JSON object per line. Entries carrying an
// idempotency key already present in the file are not written again.
class DecisionLog {
 public:
  explicit DecisionLog(std::string path);

  struct Result {
    nlohmann::json entry;
    bool created = false;
  };
  // Serialized through one mutex; the file is opened in append mode for
  // every write and flushed before returning.
  Result Append(nlohmann::json entry);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::mutex mutex_;
  std::map<std::string, nlohmann::json> by_key_;
};

struct ServiceOptions {
  std::string decision_log = "decisions.jsonl";
  std::string ui_dir;  // optional static files mounted at /
  CommonOptions defaults;
};

// HTTP front end over an immutable, asynchronously loaded database.
class QueryService {
 public:
  using Loader = std::function<ModelDatabase()>;

  QueryService(ServiceOptions options, Loader loader);
  ~QueryService();
  QueryService(const QueryService&) = delete;
  QueryService& operator=(const QueryService&) = delete;

  // Starts the loader on a background thread. Until it finishes every
  // endpoint answers 503.
  void StartLoading();
  bool Ready() const;
  // Blocks until loading has finished or failed.
  void WaitLoaded();

  // Binds to an ephemeral port and serves on a background thread.
  int StartOnAnyPort(const std::string& host = "127.0.0.1");
  // Serves on the calling thread until Stop().
  bool Listen(const std::string& host, int port);
  void Stop();

 private:
  void Routes();

  ServiceOptions options_;
  Loader loader_;
  std::unique_ptr<httplib::Server> server_;
  DecisionLog log_;

  mutable std::mutex state_mutex_;
  std::shared_ptr<const ModelDatabase> db_;
  std::optional<std::string> load_error_;
  std::atomic<bool> ready_{false};
  std::thread loader_thread_;
  std::thread server_thread_;
};

}  // namespace ccss::cli

#endif  // CCSS_TOOLS_SERVICE_H_
