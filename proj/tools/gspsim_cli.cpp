// Copyright 2026 The gspsim Authors.
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

// Command-line front end: run, validate and list experiments.

#include "gspsim/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;
constexpr int kMissingCells = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium and mechanism-design sweeps for weighted GSP keyword auctions"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "./results";
  int threads = 0;
  bool quiet = false;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--threads", threads, "Worker threads (0 = auto)")->capture_default_str();
  run->add_flag("--quiet", quiet, "Suppress progress output");
  run->add_flag("--timing", timing, "Record wall_time_ms (output is then not reproducible)");

  auto* list = app.add_subcommand("list-experiments", "List experiment ids");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  if (list->parsed()) {
    for (auto kind : gspsim::all_experiments()) {
      std::cout << gspsim::to_string(kind) << '\t' << gspsim::describe(kind) << '\n';
    }
    return kOk;
  }

  if (validate->parsed()) {
    try {
      const auto config = gspsim::load_config(validate_path);
      std::cout << validate_path << ": ok (" << gspsim::to_string(config.experiment) << ")\n";
      return kOk;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsageError;
    }
  }

  gspsim::ExperimentConfig config;
  try {
    config = gspsim::load_config(config_path);
    if (seed) config.seed = *seed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  if (threads < 0) {
    std::cerr << "error: --threads must be non-negative\n";
    return kUsageError;
  }

  try {
    gspsim::RunOptions options;
    options.threads = threads;
    options.record_timing = timing;
    if (!quiet) options.log = [](const std::string& line) { std::cerr << line << '\n'; };
    const auto result = gspsim::run_experiment(config, options);
    const std::string name = gspsim::to_string(config.experiment);
    gspsim::write_results(out_dir, name, result);
    if (!quiet) {
      std::cerr << "wrote " << result.rows.size() << " rows to " << out_dir << '/' << name
                << ".csv\n";
    }
    if (result.missing_cells > 0) {
      std::cerr << "warning: " << result.missing_cells << " cell(s) without an equilibrium estimate\n";
      return kMissingCells;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}
