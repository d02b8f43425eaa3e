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

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "service.h"

namespace {

using ccss::cli::CommonOptions;

void AddCommonOptions(CLI::App* app, CommonOptions* o) {
  app->add_option("--alpha", o->alpha, "Position weight of the cost metric")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--sigma-gain", o->sigma_gain,
                  "Unmatched-point gain (default 70 * alpha)");
  app->add_option("--tau", o->tau, "Concavity threshold");
  app->add_option("--se-radius", o->se_radius, "Disc radius for morphology");
  app->add_option("--samples", o->samples, "Contour samples");
  app->add_option("--max-rows", o->max_rows, "Scale-space row cap");
  app->add_option("--top-k", o->top_k, "Entries to print")
      ->default_val(ccss::cli::kDefaultTopK);
}

std::string DefaultDbDir() {
  const char* env = std::getenv("CCSS_DB_DIR");
  return env ? env : "";
}

ccss::cli::QueryService* g_service = nullptr;

void OnSignal(int) {
  if (g_service) g_service->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Silhouette identification with concavity-convexity scale space"};
  app.require_subcommand(1);
  CommonOptions opts;
  std::string db_dir = DefaultDbDir();

  auto* build = app.add_subcommand("build", "Build a model database from masks");
  std::string masks_dir;
  build->add_option("--db", db_dir, "Database directory ($CCSS_DB_DIR)")
      ->required(db_dir.empty());
  build->add_option("masks", masks_dir, "Directory of model masks")->required();
  AddCommonOptions(build, &opts);

  auto* query = app.add_subcommand("query", "Rank the database against a mask");
  std::string mask_path;
  bool as_json = false;
  query->add_option("--db", db_dir, "Database directory ($CCSS_DB_DIR)")
      ->required(db_dir.empty());
  query->add_option("mask", mask_path, "Target mask (PGM or PNG)")->required();
  query->add_flag("--json", as_json, "Emit JSON");
  AddCommonOptions(query, &opts);

  auto* render = app.add_subcommand("render", "Plot a scale-space image");
  std::string out_png;
  std::string mode = "ccss";
  render->add_option("mask", mask_path, "Mask (PGM or PNG)")->required();
  render->add_option("out", out_png, "Output PNG")->required();
  render->add_option("--mode", mode, "css, ccss or evolution")
      ->check(CLI::IsMember({"css", "ccss", "evolution"}));
  AddCommonOptions(render, &opts);

  auto* eval = app.add_subcommand("eval", "Rank-frequency report over queries");
  std::string manifest;
  eval->add_option("--db", db_dir, "Database directory ($CCSS_DB_DIR)")
      ->required(db_dir.empty());
  eval->add_option("manifest", manifest, "Queries manifest (JSON)")->required();
  eval->add_flag("--json", as_json, "Emit JSON");
  AddCommonOptions(eval, &opts);

  auto* serve = app.add_subcommand("serve", "Run the HTTP query service");
  ccss::cli::ServiceOptions service_opts;
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--db", db_dir, "Database directory ($CCSS_DB_DIR)")
      ->required(db_dir.empty());
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");
  serve->add_option("--decision-log", service_opts.decision_log,
                    "Append-only decision log (JSON lines)");
  serve->add_option("--ui-dir", service_opts.ui_dir,
                    "Static operator UI to serve at /");
  AddCommonOptions(serve, &opts);

  auto* synth = app.add_subcommand("synth", "Write a synthetic hull corpus");
  std::string out_dir;
  std::size_t count = 200;
  uint64_t seed = 1;
  std::size_t queries = 0;
  synth->add_option("out", out_dir, "Output directory")->required();
  synth->add_option("--count", count, "Number of models");
  synth->add_option("--seed", seed, "Generator seed");
  synth->add_option("--queries", queries, "Perturbed queries to write");

  CLI11_PARSE(app, argc, argv);

  if (*build) return ccss::cli::CmdBuild(db_dir, masks_dir, opts, std::cout, std::cerr);
  if (*query) {
    return ccss::cli::CmdQuery(db_dir, mask_path, as_json, opts, std::cout,
                               std::cerr);
  }
  if (*render) {
    return ccss::cli::CmdRender(mask_path, out_png, mode, opts, std::cout,
                                std::cerr);
  }
  if (*eval) {
    return ccss::cli::CmdEval(db_dir, manifest, as_json, opts, std::cout,
                              std::cerr);
  }
  if (*synth) {
    return ccss::cli::CmdSynth(out_dir, count, seed, queries, std::cout,
                               std::cerr);
  }
  service_opts.defaults = opts;
  ccss::cli::QueryService service(
      service_opts, [db_dir] { return ccss::ModelDatabase::Load(db_dir); });
  g_service = &service;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  service.StartLoading();
  std::cerr << "serving " << db_dir << " on http://" << host << ':' << port
            << '\n';
  if (!service.Listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}
