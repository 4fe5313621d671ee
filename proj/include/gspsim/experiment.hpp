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

#pragma once

#include "gspsim/equilibrium_search.hpp"
#include "gspsim/regression.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gspsim {

enum class ExperimentKind {
  TruthfulnessRegret,      // regret of all-truthful bidding vs q
  TruthfulnessAlpha,       // equilibrium shading vs q
  WelfareSweep,
  BetaRatioSweep,          // quadratic coefficient relative to alpha
  ProfitSweep,
  CorrelationProfitDiff,   // profit(q=0) - profit(q=1) vs quality noise sd
  ClusteredProfit,
  ConstantStrategyProfit,  // fixed profile, no equilibrium search
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);
std::span<const ExperimentKind> all_experiments();
std::string_view describe(ExperimentKind kind);

/// Bad configuration text or values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::ProfitSweep;

  int slots = 0;  // 0: one slot per player
  double top_ctr = 1.0;
  double ctr_decay = 1.428;
  DistributionSpec distribution;

  std::vector<double> q_grid;
  std::vector<double> sd_grid;  // x-axis of correlation_profit_diff
  std::vector<int> player_counts;
  StrategyClass strategy_class = StrategyClass::Linear;

  AnnealingSchedule schedule;
  int max_iterations = 30;
  double threshold = 0.01;
  ThresholdMode threshold_mode = ThresholdMode::Absolute;
  int max_threshold_doublings = 3;
  std::int64_t samples = 1000;
  std::int64_t eval_samples = 100000;
  double initial_alpha = 0.5;
  double initial_beta = 0.0;
  double fixed_alpha = 1.0;
  double delta_r2_min = 0.05;
  std::uint64_t seed = 1;

  /// Defaults for every field given the experiment.
  static ExperimentConfig defaults_for(ExperimentKind kind);

  /// Throws ConfigError.
  void validate() const;

  /// Points along the sweep axis (q, or sd for correlation_profit_diff).
  const std::vector<double>& sweep_axis() const;
  AuctionConfig auction(int players, double q) const;
};

/// `key = value` lines, `#` comments, comma-separated lists. Only
/// `experiment` is required.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// One CSV cell. Absent optionals are written as NA.
struct ResultRow {
  std::string experiment;
  double q = 0.0;
  int m = 0;
  std::string metric;
  std::optional<Estimate> estimate;
  std::optional<int> n_equilibria;
  std::uint64_t seed = 0;
  std::optional<double> wall_time_ms;
};

struct SeriesFit {
  int m = 0;
  std::string metric;
  SweepResult sweep;
  std::optional<Optimum> maximum;
  std::optional<Optimum> minimum;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SeriesFit> fits;
  std::vector<std::string> diagnostics;
  int missing_cells = 0;
};

struct RunOptions {
  int threads = 1;
  bool record_timing = false;  // timings make the CSV non-reproducible
  std::function<void(const std::string&)> log;
};

/// Runs every (sweep point, player count) cell, then fits each series.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Stream id of one cell phase; stable when cells are added elsewhere.
std::uint64_t cell_stream_id(ExperimentKind kind, std::size_t axis_index, int players,
                             std::string_view phase);

inline constexpr std::string_view kCsvHeader =
    "experiment,q,m,metric,estimate,std_error,n_equilibria,seed,wall_time_ms";

std::string format_number(double value);
std::string results_csv(const ExperimentResult& result);
std::string fits_csv(const std::string& experiment, const ExperimentResult& result);

/// Writes <experiment>.csv, <experiment>_fits.csv and, when there is
/// anything to report, <experiment>_diagnostics.txt into `directory`.
void write_results(const std::filesystem::path& directory, const std::string& experiment,
                   const ExperimentResult& result);

}  // namespace gspsim
