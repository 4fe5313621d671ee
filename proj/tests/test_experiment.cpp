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

#include "gspsim/experiment.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gspsim;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const char* kSmallProfit = R"(
experiment = profit_sweep
q_grid = 0, 0.5, 1
player_counts = 3
max_iterations = 3
rounds = 20
samples = 300
eval_samples = 2000
seed = 11
)";

}  // namespace

TEST_CASE("experiment names") {
  for (ExperimentKind k : all_experiments()) {
    CHECK(parse_experiment_kind(to_string(k)) == k);
    CHECK_FALSE(describe(k).empty());
  }
  CHECK(all_experiments().size() == 8);
  CHECK_THROWS_AS(parse_experiment_kind("nope"), ConfigError);
}

TEST_CASE("config parsing") {
  SUBCASE("minimal") {
    const auto c = parse_config("experiment = welfare_sweep\n");
    CHECK(c.experiment == ExperimentKind::WelfareSweep);
    CHECK(c.q_grid.size() == 11);
    CHECK(c.player_counts == std::vector<int>{8});
    CHECK(c.max_iterations == 30);
    CHECK(c.threshold == 0.01);
    CHECK(c.eval_samples == 100000);
  }
  SUBCASE("per-experiment defaults") {
    CHECK(parse_config("experiment = beta_ratio_sweep").strategy_class == StrategyClass::Quadratic);
    CHECK(parse_config("experiment = profit_sweep").player_counts == std::vector<int>{4, 8, 20});
    CHECK(parse_config("experiment = clustered_profit").distribution.kind ==
          DistributionKind::ClusteredValues);
    const auto corr = parse_config("experiment = correlation_profit_diff");
    CHECK(corr.distribution.kind == DistributionKind::PositiveCorrelation);
    CHECK(&corr.sweep_axis() == &corr.sd_grid);
  }
  SUBCASE("lists, comments and overrides") {
    const auto c = parse_config(
        "# header\nexperiment = profit_sweep  # trailing\nq_grid = 0, 0.25,1\n"
        "player_counts=2,5\nthreshold_mode = relative\nseed = 42\nslots = 2\n");
    CHECK(c.q_grid == std::vector<double>{0.0, 0.25, 1.0});
    CHECK(c.player_counts == std::vector<int>{2, 5});
    CHECK(c.threshold_mode == ThresholdMode::Relative);
    CHECK(c.seed == 42);
    CHECK(c.auction(5, 0.3).slots == 2);
    CHECK(c.auction(5, 0.3).q == 0.3);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config("q_grid = 0, 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nbogus = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nseed = 1\nseed = 2"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nq_grid = 0, 1.5"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nq_grid = 0.5, 0.2"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nsamples = ten"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nslots = 9\nplayer_counts = 4"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\ntie_rule = random"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nthreshold = 0"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = profit_sweep\nno equals sign"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), ConfigError);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("cell stream ids") {
  const auto a = cell_stream_id(ExperimentKind::ProfitSweep, 2, 8, "search");
  CHECK(a == cell_stream_id(ExperimentKind::ProfitSweep, 2, 8, "search"));
  CHECK(a != cell_stream_id(ExperimentKind::ProfitSweep, 3, 8, "search"));
  CHECK(a != cell_stream_id(ExperimentKind::ProfitSweep, 2, 4, "search"));
  CHECK(a != cell_stream_id(ExperimentKind::ProfitSweep, 2, 8, "eval"));
  CHECK(a != cell_stream_id(ExperimentKind::WelfareSweep, 2, 8, "search"));
}

TEST_CASE("small profit sweep") {
  const auto config = parse_config(kSmallProfit);
  const auto result = run_experiment(config);
  const std::string csv = results_csv(result);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 1 + 3 * 2);
  CHECK(lines[0] == kCsvHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].rfind("profit_sweep,", 0) == 0);
    CHECK(lines[i].size() > 3);
    CHECK(lines[i].substr(lines[i].size() - 3) == ",NA");
  }
  CHECK(result.missing_cells == 0);
  for (const auto& row : result.rows) {
    REQUIRE(row.estimate);
    CHECK(row.n_equilibria.value_or(0) >= 1);
    CHECK(row.seed == 11);
  }

  SUBCASE("byte-identical reruns") { CHECK(results_csv(run_experiment(config)) == csv); }
  SUBCASE("thread count does not matter") {
    CHECK(results_csv(run_experiment(config, {.threads = 3})) == csv);
  }
  SUBCASE("fits") {
    REQUIRE(result.fits.size() == 2);
    for (const auto& f : result.fits) {
      CHECK(f.sweep.points.size() == 3);
      REQUIRE(f.sweep.fitted);
      CHECK(f.sweep.fitted->degree <= 2);
      REQUIRE(f.maximum);
      CHECK(f.maximum->q >= 0.0);
      CHECK(f.maximum->q <= 1.0);
    }
    const auto fit_lines = lines_of(fits_csv("profit_sweep", result));
    CHECK(fit_lines.size() == 3);
  }
  SUBCASE("timing column") {
    const auto timed = run_experiment(config, {.record_timing = true});
    for (const auto& row : timed.rows) CHECK(row.wall_time_ms.has_value());
  }
  SUBCASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "gspsim_test_experiment";
    std::filesystem::remove_all(dir);
    write_results(dir, "profit_sweep", result);
    CHECK(std::filesystem::exists(dir / "profit_sweep.csv"));
    CHECK(std::filesystem::exists(dir / "profit_sweep_fits.csv"));
    CHECK_FALSE(std::filesystem::exists(dir / "profit_sweep_diagnostics.txt"));
    std::ifstream in(dir / "profit_sweep.csv");
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == csv);
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("constant strategy profit decreases in q") {
  const auto config = parse_config(
      "experiment = constant_strategy_profit\nq_grid = 0, 0.5, 1\nplayer_counts = 3\n"
      "eval_samples = 20000\n");
  const auto result = run_experiment(config);
  REQUIRE(result.rows.size() == 3);
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    CHECK(result.rows[i].estimate->mean < result.rows[i - 1].estimate->mean);
  }
  CHECK_FALSE(result.rows[0].n_equilibria.has_value());
}

TEST_CASE("empty equilibrium sets become NA cells") {
  const auto config = parse_config(
      "experiment = welfare_sweep\nq_grid = 0.5\nplayer_counts = 3\nmax_iterations = 1\n"
      "initial_alpha = 0\nthreshold = 1e-9\nmax_threshold_doublings = 0\nrounds = 10\n"
      "samples = 200\neval_samples = 200\n");
  std::vector<std::string> logged;
  const auto result =
      run_experiment(config, {.log = [&](const std::string& s) { logged.push_back(s); }});
  CHECK(result.missing_cells == 1);
  CHECK_FALSE(result.diagnostics.empty());
  for (const auto& d : result.diagnostics) {
    CHECK(std::find(logged.begin(), logged.end(), d) != logged.end());
  }
  for (const auto& row : result.rows) {
    CHECK_FALSE(row.estimate.has_value());
    CHECK(row.n_equilibria == 0);
  }
  const auto lines = lines_of(results_csv(result));
  REQUIRE(lines.size() >= 2);
  CHECK(lines[1] == "welfare_sweep,0.5,3,welfare,NA,NA,0,1,NA");
}

TEST_CASE("threshold widening") {
  const auto config = parse_config(
      "experiment = welfare_sweep\nq_grid = 0.5\nplayer_counts = 3\nmax_iterations = 1\n"
      "initial_alpha = 0\nthreshold = 1e-9\nmax_threshold_doublings = 80\nrounds = 10\n"
      "samples = 200\neval_samples = 200\n");
  const auto result = run_experiment(config);
  CHECK(result.missing_cells == 0);
  CHECK_FALSE(result.diagnostics.empty());
}
