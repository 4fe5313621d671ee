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

#include <chrono>
#include <map>
#include <mutex>
#include <sstream>

namespace gspsim {
namespace {

std::vector<std::string> metric_names(const ExperimentConfig& c) {
  const bool quadratic = c.strategy_class == StrategyClass::Quadratic;
  switch (c.experiment) {
    case ExperimentKind::TruthfulnessRegret:
      return {"regret", "payoff", "regret_ratio"};
    case ExperimentKind::TruthfulnessAlpha:
      return {"mean_alpha", "truthful_distance", "regret_of_truthful"};
    case ExperimentKind::WelfareSweep:
      if (quadratic) return {"welfare", "mean_alpha", "mean_beta_over_alpha"};
      return {"welfare", "mean_alpha"};
    case ExperimentKind::BetaRatioSweep:
      return {"mean_beta_over_alpha", "mean_alpha", "welfare"};
    case ExperimentKind::ProfitSweep:
    case ExperimentKind::ClusteredProfit:
      return {"profit", "mean_alpha"};
    case ExperimentKind::CorrelationProfitDiff:
      return {"profit_diff", "profit_q0", "profit_q1"};
    case ExperimentKind::ConstantStrategyProfit:
      return {"profit"};
  }
  return {};
}

struct CellOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> diagnostics;
  bool missing = false;
};

struct CellMetric {
  std::optional<Estimate> estimate;
  std::optional<int> n_equilibria;
};

class CellRunner {
 public:
  CellRunner(const ExperimentConfig& config, std::size_t axis_index, int players, int threads)
      : c_(config), axis_index_(axis_index), players_(players), threads_(threads) {}

  CellOutput run(bool record_timing) {
    const auto start = std::chrono::steady_clock::now();
    std::map<std::string, CellMetric> metrics = compute();
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    CellOutput out;
    out.diagnostics = std::move(diagnostics_);
    for (const auto& name : metric_names(c_)) {
      ResultRow row;
      row.experiment = to_string(c_.experiment);
      row.q = c_.sweep_axis()[axis_index_];
      row.m = players_;
      row.metric = name;
      if (auto it = metrics.find(name); it != metrics.end()) {
        row.estimate = it->second.estimate;
        row.n_equilibria = it->second.n_equilibria;
      }
      if (!row.estimate) out.missing = true;
      row.seed = c_.seed;
      if (record_timing) row.wall_time_ms = elapsed;
      out.rows.push_back(std::move(row));
    }
    return out;
  }

 private:
  SeededStream stream(std::string_view phase) const {
    return {c_.seed, cell_stream_id(c_.experiment, axis_index_, players_, phase)};
  }

  std::string label() const {
    std::ostringstream os;
    os << to_string(c_.experiment) << " x=" << c_.sweep_axis()[axis_index_] << " m=" << players_;
    return os.str();
  }

  SearchOptions search_options() const { return {c_.schedule, c_.samples, threads_}; }
  SamplingOptions eval_options() const { return {c_.eval_samples, threads_}; }

  Strategy initial_strategy() const {
    if (c_.strategy_class == StrategyClass::Quadratic) {
      return QuadraticStrategy(c_.initial_alpha, c_.initial_beta);
    }
    return LinearStrategy(c_.initial_alpha);
  }

  // Best-response trace and its equilibrium set, widening the threshold by
  // doubling when nothing qualifies.
  EquilibriumEstimateSet equilibria(const AuctionConfig& auction, const DistributionSpec& spec,
                                    std::string_view phase) {
    const BestResponseTrace trace =
        iterative_best_response(auction, spec, SymmetricProfile{initial_strategy()},
                                c_.max_iterations, search_options(), stream(phase));
    double threshold = c_.threshold;
    EquilibriumEstimateSet set = select_equilibrium_set(trace, threshold, c_.threshold_mode);
    for (int k = 0; set.empty() && k < c_.max_threshold_doublings; ++k) {
      threshold *= 2.0;
      std::ostringstream os;
      os << label() << " [" << phase << "]: no profile below threshold, widening to "
         << threshold;
      diagnostics_.push_back(os.str());
      set = select_equilibrium_set(trace, threshold, c_.threshold_mode);
    }
    if (set.empty()) {
      std::ostringstream os;
      os << label() << " [" << phase << "]: no equilibrium estimate up to threshold "
         << threshold << "; cell reported as NA";
      diagnostics_.push_back(os.str());
    }
    return set;
  }

  std::map<std::string, CellMetric> compute() {
    const double x = c_.sweep_axis()[axis_index_];
    std::map<std::string, CellMetric> out;
    switch (c_.experiment) {
      case ExperimentKind::TruthfulnessRegret: {
        const AuctionConfig auction = c_.auction(players_, x);
        const SymmetricProfile honest{truthful(c_.strategy_class)};
        const BestResponse response = approximate_best_response(
            auction, c_.distribution, honest, search_options(), stream("search"));
        const RegretRatio r = estimate_regret_ratio(auction, c_.distribution, honest,
                                                    response.strategy, eval_options(),
                                                    stream("eval"));
        out["regret"] = {r.regret, std::nullopt};
        out["payoff"] = {r.payoff, std::nullopt};
        if (r.payoff.mean != 0.0) out["regret_ratio"] = {r.ratio, std::nullopt};
        return out;
      }
      case ExperimentKind::ConstantStrategyProfit: {
        const SymmetricProfile fixed{clamp_to_class(c_.strategy_class, c_.fixed_alpha)};
        out["profit"] = {expected_profit(c_.auction(players_, x), c_.distribution, fixed,
                                         eval_options(), stream("eval")),
                         std::nullopt};
        return out;
      }
      case ExperimentKind::CorrelationProfitDiff: {
        DistributionSpec spec = c_.distribution;
        spec.quality_noise_sd = x;
        const AuctionConfig rank_by_bid = c_.auction(players_, 0.0);
        const AuctionConfig rank_by_revenue = c_.auction(players_, 1.0);
        const auto low = equilibria(rank_by_bid, spec, "search_q0");
        const auto high = equilibria(rank_by_revenue, spec, "search_q1");
        const int n_low = static_cast<int>(low.members.size());
        const int n_high = static_cast<int>(high.members.size());
        const SeededStream eval = stream("eval");
        if (!low.empty()) {
          out["profit_q0"] = {evaluate_design(rank_by_bid, spec, low, DesignMetric::Profit,
                                              eval_options(), eval),
                              n_low};
        } else {
          out["profit_q0"] = {std::nullopt, 0};
        }
        if (!high.empty()) {
          out["profit_q1"] = {evaluate_design(rank_by_revenue, spec, high, DesignMetric::Profit,
                                              eval_options(), eval),
                              n_high};
        } else {
          out["profit_q1"] = {std::nullopt, 0};
        }
        if (!low.empty() && !high.empty()) {
          const auto lp = low.profiles();
          const auto hp = high.profiles();
          out["profit_diff"] = {profit_difference(rank_by_bid, lp, rank_by_revenue, hp, spec,
                                                  eval_options(), eval),
                                std::min(n_low, n_high)};
        } else {
          out["profit_diff"] = {std::nullopt, std::min(n_low, n_high)};
        }
        return out;
      }
      default:
        break;
    }

    const AuctionConfig auction = c_.auction(players_, x);
    const auto set = equilibria(auction, c_.distribution, "search");
    const int n = static_cast<int>(set.members.size());
    const SeededStream eval = stream("eval");
    for (const auto& name : metric_names(c_)) {
      if (set.empty()) {
        out[name] = {std::nullopt, 0};
        continue;
      }
      std::optional<Estimate> e;
      if (name == "welfare") {
        e = evaluate_design(auction, c_.distribution, set, DesignMetric::Welfare, eval_options(), eval);
      } else if (name == "profit") {
        e = evaluate_design(auction, c_.distribution, set, DesignMetric::Profit, eval_options(), eval);
      } else if (name == "mean_alpha") {
        e = evaluate_design(auction, c_.distribution, set, DesignMetric::MeanAlpha, eval_options(), eval);
      } else if (name == "mean_beta_over_alpha") {
        e = evaluate_design(auction, c_.distribution, set, DesignMetric::MeanBetaOverAlpha,
                            eval_options(), eval);
      } else if (name == "truthful_distance") {
        Estimate a = evaluate_design(auction, c_.distribution, set, DesignMetric::MeanAlpha,
                                     eval_options(), eval);
        a.mean = 1.0 - a.mean;
        e = a;
      } else if (name == "regret_of_truthful") {
        e = evaluate_design(auction, c_.distribution, set, DesignMetric::RegretOfTruthful,
                            eval_options(), eval);
      }
      out[name] = {e, n};
    }
    return out;
  }

  const ExperimentConfig& c_;
  std::size_t axis_index_;
  int players_;
  int threads_;
  std::vector<std::string> diagnostics_;
};

}  // namespace

std::uint64_t cell_stream_id(ExperimentKind kind, std::size_t axis_index, int players,
                             std::string_view phase) {
  std::uint64_t h = hash_string(to_string(kind));
  h = hash_combine(h, axis_index);
  h = hash_combine(h, static_cast<std::uint64_t>(players));
  return hash_combine(h, hash_string(phase));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const auto& axis = config.sweep_axis();
  const std::size_t n_m = config.player_counts.size();
  const std::int64_t n_cells = static_cast<std::int64_t>(axis.size() * n_m);
  const int threads = resolve_threads(options.threads);
  // One busy cell gets the whole pool; otherwise cells run side by side.
  const int inner_threads = n_cells == 1 ? threads : 1;

  std::vector<CellOutput> cells(n_cells);
  std::mutex log_mutex;
  parallel_for(n_cells, threads, [&](std::int64_t index, int) {
    const std::size_t axis_index = static_cast<std::size_t>(index) / n_m;
    const int players = config.player_counts[static_cast<std::size_t>(index) % n_m];
    CellRunner runner(config, axis_index, players, inner_threads);
    cells[index] = runner.run(options.record_timing);
    if (options.log) {
      std::lock_guard lock(log_mutex);
      for (const auto& d : cells[index].diagnostics) options.log(d);
      std::ostringstream os;
      os << "done " << to_string(config.experiment) << " x=" << axis[axis_index]
         << " m=" << players;
      options.log(os.str());
    }
  });

  ExperimentResult result;
  for (auto& cell : cells) {
    if (cell.missing) ++result.missing_cells;
    for (auto& row : cell.rows) result.rows.push_back(std::move(row));
    for (auto& d : cell.diagnostics) result.diagnostics.push_back(std::move(d));
  }

  for (int m : config.player_counts) {
    for (const auto& metric : metric_names(config)) {
      SeriesFit series;
      series.m = m;
      series.metric = metric;
      for (const auto& row : result.rows) {
        if (row.m == m && row.metric == metric && row.estimate) {
          series.sweep.points.push_back({row.q, *row.estimate});
        }
      }
      const auto n = static_cast<int>(series.sweep.points.size());
      if (n >= 2) {
        series.sweep.fitted = select_fit(series.sweep.xs(), series.sweep.ys(), std::min(3, n - 1),
                                         config.delta_r2_min);
        series.maximum = argopt_on_unit_interval(*series.sweep.fitted, Sense::Maximize);
        series.minimum = argopt_on_unit_interval(*series.sweep.fitted, Sense::Minimize);
      }
      result.fits.push_back(std::move(series));
    }
  }
  return result;
}

}  // namespace gspsim
