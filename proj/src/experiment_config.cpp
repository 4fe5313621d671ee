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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace gspsim {
namespace {

constexpr std::array kExperiments{
    ExperimentKind::TruthfulnessRegret,    ExperimentKind::TruthfulnessAlpha,
    ExperimentKind::WelfareSweep,          ExperimentKind::BetaRatioSweep,
    ExperimentKind::ProfitSweep,           ExperimentKind::CorrelationProfitDiff,
    ExperimentKind::ClusteredProfit,       ExperimentKind::ConstantStrategyProfit,
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  text = trim(text);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (item.empty()) throw ConfigError("empty list entry in '" + std::string(key) + "'");
    out.push_back(parse_number<T>(key, item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("'" + std::string(key) + "' must not be empty");
  return out;
}

std::vector<double> unit_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

template <class Fn>
auto rethrow_as_config_error(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::TruthfulnessRegret: return "truthfulness_regret";
    case ExperimentKind::TruthfulnessAlpha: return "truthfulness_alpha";
    case ExperimentKind::WelfareSweep: return "welfare_sweep";
    case ExperimentKind::BetaRatioSweep: return "beta_ratio_sweep";
    case ExperimentKind::ProfitSweep: return "profit_sweep";
    case ExperimentKind::CorrelationProfitDiff: return "correlation_profit_diff";
    case ExperimentKind::ClusteredProfit: return "clustered_profit";
    case ExperimentKind::ConstantStrategyProfit: return "constant_strategy_profit";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto kind : kExperiments) {
    if (text == to_string(kind)) return kind;
  }
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

std::span<const ExperimentKind> all_experiments() { return kExperiments; }

std::string_view describe(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::TruthfulnessRegret:
      return "gain from deviating when everyone bids truthfully, vs q";
    case ExperimentKind::TruthfulnessAlpha:
      return "equilibrium fraction of value bid, vs q";
    case ExperimentKind::WelfareSweep: return "equilibrium welfare vs q";
    case ExperimentKind::BetaRatioSweep: return "quadratic coefficient beta/alpha vs q";
    case ExperimentKind::ProfitSweep: return "equilibrium profit vs q";
    case ExperimentKind::CorrelationProfitDiff:
      return "profit(q=0) - profit(q=1) vs value-quality noise sd";
    case ExperimentKind::ClusteredProfit:
      return "equilibrium profit vs q with clustered values";
    case ExperimentKind::ConstantStrategyProfit:
      return "profit vs q under a fixed bidding strategy";
  }
  return "";
}

ExperimentConfig ExperimentConfig::defaults_for(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.q_grid = unit_grid();
  c.sd_grid = {0.05, 0.1, 0.2, 0.3, 0.5};
  c.player_counts = {8};
  switch (kind) {
    case ExperimentKind::TruthfulnessRegret:
    case ExperimentKind::TruthfulnessAlpha:
    case ExperimentKind::ProfitSweep:
      c.player_counts = {4, 8, 20};
      break;
    case ExperimentKind::BetaRatioSweep:
      c.strategy_class = StrategyClass::Quadratic;
      break;
    case ExperimentKind::CorrelationProfitDiff:
      c.distribution.kind = DistributionKind::PositiveCorrelation;
      break;
    case ExperimentKind::ClusteredProfit:
      c.distribution.kind = DistributionKind::ClusteredValues;
      break;
    case ExperimentKind::ConstantStrategyProfit:
      c.distribution.kind = DistributionKind::ConstantValues;
      break;
    default:
      break;
  }
  return c;
}

const std::vector<double>& ExperimentConfig::sweep_axis() const {
  return experiment == ExperimentKind::CorrelationProfitDiff ? sd_grid : q_grid;
}

AuctionConfig ExperimentConfig::auction(int players, double q) const {
  AuctionConfig a;
  a.players = players;
  a.slots = slots == 0 ? players : slots;
  a.top_ctr = top_ctr;
  a.ctr_decay = ctr_decay;
  a.q = q;
  return a;
}

void ExperimentConfig::validate() const {
  rethrow_as_config_error([&] {
    const auto& axis = sweep_axis();
    if (axis.empty()) throw ConfigError("sweep grid is empty");
    if (!std::is_sorted(axis.begin(), axis.end()) ||
        std::adjacent_find(axis.begin(), axis.end()) != axis.end()) {
      throw ConfigError("sweep grid must be strictly increasing");
    }
    if (experiment != ExperimentKind::CorrelationProfitDiff) {
      for (double q : q_grid) {
        if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q_grid entries must lie in [0, 1]");
      }
    }
    if (player_counts.empty()) throw ConfigError("player_counts is empty");
    if (slots < 0) throw ConfigError("slots must be non-negative");
    for (int m : player_counts) {
      auction(m, 0.0).validate();
    }
    DistributionSpec dist = distribution;
    for (double sd : experiment == ExperimentKind::CorrelationProfitDiff ? sd_grid
                                                                          : std::vector<double>{}) {
      dist.quality_noise_sd = sd;
      dist.validate();
    }
    distribution.validate();
    schedule.validate();
    if (max_iterations < 1) throw ConfigError("max_iterations must be positive");
    if (!(threshold > 0.0)) throw ConfigError("threshold must be positive");
    if (max_threshold_doublings < 0) throw ConfigError("max_threshold_doublings must be >= 0");
    if (samples < 2 || eval_samples < 2) throw ConfigError("sample counts must be at least 2");
    // Strategy constructors enforce the class invariants.
    if (strategy_class == StrategyClass::Quadratic) {
      static_cast<void>(QuadraticStrategy(initial_alpha, initial_beta));
    } else {
      static_cast<void>(LinearStrategy(initial_alpha));
    }
    static_cast<void>(LinearStrategy(fixed_alpha));
    if (!(delta_r2_min >= 0.0)) throw ConfigError("delta_r2_min must be non-negative");
    return 0;
  });
}

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!entries.emplace(key, value).second) {
      throw ConfigError("duplicate key '" + key + "'");
    }
  }

  const auto exp = entries.find("experiment");
  if (exp == entries.end()) throw ConfigError("missing 'experiment'");
  ExperimentConfig c = ExperimentConfig::defaults_for(parse_experiment_kind(exp->second));
  entries.erase(exp);

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_number<double>(k, v); };
  };
  auto integer = [](int& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_number<int>(k, v); };
  };
  auto count = [](std::int64_t& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = parse_number<std::int64_t>(k, v);
    };
  };
  const std::map<std::string, Setter, std::less<>> setters{
      {"slots", integer(c.slots)},
      {"top_ctr", real(c.top_ctr)},
      {"ctr_decay", real(c.ctr_decay)},
      {"tie_rule",
       [](const std::string&, const std::string& v) {
         if (v != "higher_quality") throw ConfigError("tie_rule must be higher_quality");
       }},
      {"distribution",
       [&](const std::string&, const std::string& v) {
         c.distribution.kind = rethrow_as_config_error([&] { return parse_distribution_kind(v); });
       }},
      {"lognormal_mu", real(c.distribution.lognormal_mu)},
      {"lognormal_sigma", real(c.distribution.lognormal_sigma)},
      {"quality_noise_sd", real(c.distribution.quality_noise_sd)},
      {"cluster_radius", real(c.distribution.cluster_radius)},
      {"constant_value", real(c.distribution.constant_value)},
      {"q_grid", [&](const std::string& k, const std::string& v) { c.q_grid = parse_list<double>(k, v); }},
      {"sd_grid", [&](const std::string& k, const std::string& v) { c.sd_grid = parse_list<double>(k, v); }},
      {"player_counts",
       [&](const std::string& k, const std::string& v) { c.player_counts = parse_list<int>(k, v); }},
      {"strategy_class",
       [&](const std::string&, const std::string& v) {
         c.strategy_class = rethrow_as_config_error([&] { return parse_strategy_class(v); });
       }},
      {"rounds", integer(c.schedule.rounds)},
      {"initial_temperature", real(c.schedule.initial_temperature)},
      {"cooling_factor", real(c.schedule.cooling_factor)},
      {"proposal_sd_initial", real(c.schedule.proposal_sd_initial)},
      {"proposal_sd_final", real(c.schedule.proposal_sd_final)},
      {"max_iterations", integer(c.max_iterations)},
      {"threshold", real(c.threshold)},
      {"threshold_mode",
       [&](const std::string&, const std::string& v) {
         if (v == "absolute") {
           c.threshold_mode = ThresholdMode::Absolute;
         } else if (v == "relative") {
           c.threshold_mode = ThresholdMode::Relative;
         } else {
           throw ConfigError("threshold_mode must be absolute or relative");
         }
       }},
      {"max_threshold_doublings", integer(c.max_threshold_doublings)},
      {"samples", count(c.samples)},
      {"eval_samples", count(c.eval_samples)},
      {"initial_alpha", real(c.initial_alpha)},
      {"initial_beta", real(c.initial_beta)},
      {"fixed_alpha", real(c.fixed_alpha)},
      {"delta_r2_min", real(c.delta_r2_min)},
      {"seed",
       [&](const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
  };
  for (const auto& [key, value] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'");
    it->second(key, value);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace gspsim
