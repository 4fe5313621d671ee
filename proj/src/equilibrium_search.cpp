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

#include "gspsim/equilibrium_search.hpp"

#include <algorithm>
#include <cmath>

namespace gspsim {
namespace {

// Type draws and opponent bids shared by every candidate of one search.
class CandidateScorer {
 public:
  CandidateScorer(const AuctionConfig& config, const DistributionSpec& spec,
                  const SymmetricProfile& opponents, const SearchOptions& options,
                  const SeededStream& stream)
      : config_(config), threads_(options.threads) {
    const int m = config.players;
    const std::int64_t n = options.samples;
    values_.resize(m, n);
    qualities_.resize(m, n);
    opponent_bids_.resize(m, n);
    const std::int64_t chunks = (n + kSamplesPerChunk - 1) / kSamplesPerChunk;
    parallel_for(chunks, threads_, [&](std::int64_t chunk, int) {
      Engine engine = make_engine(stream, static_cast<std::uint64_t>(chunk));
      TypeProfile types;
      const std::int64_t end = std::min(n, (chunk + 1) * kSamplesPerChunk);
      for (std::int64_t k = chunk * kSamplesPerChunk; k < end; ++k) {
        sample_profile_into(spec, m, engine, types);
        values_.col(k) = types.values;
        qualities_.col(k) = types.qualities;
        for (int i = 0; i < m; ++i) opponent_bids_(i, k) = bid(opponents.strategy, types.values[i]);
      }
    });
    utilities_.resize(n);
    workers_.resize(resolve_threads(threads_));
  }

  // Mean utility of player 0 playing `candidate`.
  double operator()(const Strategy& candidate) {
    const std::int64_t n = values_.cols();
    const std::int64_t chunks = (n + kSamplesPerChunk - 1) / kSamplesPerChunk;
    parallel_for(chunks, threads_, [&](std::int64_t chunk, int worker) {
      Worker& w = workers_[worker];
      const std::int64_t end = std::min(n, (chunk + 1) * kSamplesPerChunk);
      for (std::int64_t k = chunk * kSamplesPerChunk; k < end; ++k) {
        w.bids = opponent_bids_.col(k);
        w.bids[0] = bid(candidate, values_(0, k));
        realize_into(config_, values_.col(k), qualities_.col(k), w.bids, w.scratch, w.outcome);
        utilities_[k] = w.outcome.utilities[0];
      }
    });
    return utilities_.mean();
  }

 private:
  struct Worker {
    Eigen::VectorXd bids;
    AuctionScratch scratch;
    RealizedOutcome outcome;
  };

  const AuctionConfig& config_;
  int threads_;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd qualities_;
  Eigen::MatrixXd opponent_bids_;
  Eigen::VectorXd utilities_;
  std::vector<Worker> workers_;
};

}  // namespace

void AnnealingSchedule::validate() const {
  if (rounds < 1) throw std::invalid_argument("annealing needs at least one round");
  if (!(initial_temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw std::invalid_argument("cooling_factor must lie in (0, 1)");
  }
  if (!(proposal_sd_final > 0.0 && proposal_sd_final <= proposal_sd_initial)) {
    throw std::invalid_argument("need 0 < proposal_sd_final <= proposal_sd_initial");
  }
}

double AnnealingSchedule::temperature(int round) const {
  return initial_temperature * std::pow(cooling_factor, round);
}

double AnnealingSchedule::proposal_sd(int round) const {
  if (rounds == 1) return proposal_sd_initial;
  const double t = static_cast<double>(round) / static_cast<double>(rounds - 1);
  return proposal_sd_initial + (proposal_sd_final - proposal_sd_initial) * t;
}

BestResponse approximate_best_response(const AuctionConfig& config,
                                       const DistributionSpec& spec,
                                       const SymmetricProfile& opponents,
                                       const SearchOptions& options,
                                       const SeededStream& stream) {
  config.validate();
  spec.validate();
  options.schedule.validate();
  if (options.samples < 2) throw std::invalid_argument("need at least two samples");

  const StrategyClass cls = class_of(opponents.strategy);
  const AnnealingSchedule& schedule = options.schedule;
  CandidateScorer score(config, spec, opponents, options, stream.child("draws"));
  Engine walk = make_engine(stream.child("proposals"));
  std::normal_distribution<double> step(0.0, 1.0);

  Strategy current = opponents.strategy;
  double current_value = score(current);
  Strategy best = current;
  double best_value = current_value;

  for (int round = 0; round < schedule.rounds; ++round) {
    const double sd = schedule.proposal_sd(round);
    const double alpha = alpha_of(current) + sd * step(walk);
    const double beta = cls == StrategyClass::Quadratic ? beta_of(current) + sd * step(walk) : 0.0;
    const Strategy candidate = clamp_to_class(cls, alpha, beta);
    const double value = score(candidate);
    const double delta = value - current_value;
    const double u = uniform01(walk);
    if (delta >= 0.0 || u < std::exp(delta / schedule.temperature(round))) {
      current = candidate;
      current_value = value;
    }
    if (value > best_value) {
      best = candidate;
      best_value = value;
    }
  }

  const SamplingOptions fresh{options.samples, options.threads};
  return {best, expected_utility(config, spec, opponents, Deviation{0, best}, fresh,
                                 stream.child("reevaluate"))};
}

BestResponseTrace iterative_best_response(const AuctionConfig& config,
                                          const DistributionSpec& spec,
                                          const SymmetricProfile& initial, int max_iterations,
                                          const SearchOptions& options,
                                          const SeededStream& stream) {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  BestResponseTrace trace;
  trace.entries.reserve(max_iterations);
  SymmetricProfile profile = initial;
  const SamplingOptions sampling{options.samples, options.threads};
  for (int t = 0; t < max_iterations; ++t) {
    const SeededStream step = stream.child(static_cast<std::uint64_t>(t));
    BestResponse response =
        approximate_best_response(config, spec, profile, options, step.child("search"));
    const RegretRatio r = estimate_regret_ratio(config, spec, profile, response.strategy,
                                                sampling, step.child("regret"));
    trace.entries.push_back({t, profile, r.regret, r.payoff, response.strategy});
    profile = SymmetricProfile{response.strategy};
  }
  return trace;
}

std::vector<SymmetricProfile> EquilibriumEstimateSet::profiles() const {
  std::vector<SymmetricProfile> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.profile);
  return out;
}

EquilibriumEstimateSet select_equilibrium_set(const BestResponseTrace& trace,
                                              double threshold, ThresholdMode mode) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  EquilibriumEstimateSet set;
  set.threshold = threshold;
  set.mode = mode;
  for (const auto& entry : trace.entries) {
    const double bound =
        mode == ThresholdMode::Absolute ? threshold : threshold * std::abs(entry.payoff.mean);
    if (entry.regret.mean <= bound) set.members.push_back(entry);
  }
  return set;
}

std::string to_string(DesignMetric metric) {
  switch (metric) {
    case DesignMetric::Welfare: return "welfare";
    case DesignMetric::Profit: return "profit";
    case DesignMetric::MeanAlpha: return "mean_alpha";
    case DesignMetric::MeanBetaOverAlpha: return "mean_beta_over_alpha";
    case DesignMetric::RegretOfTruthful: return "regret_of_truthful";
  }
  return "unknown";
}

Estimate evaluate_design(const AuctionConfig& config, const DistributionSpec& spec,
                         const EquilibriumEstimateSet& set, DesignMetric metric,
                         const SamplingOptions& options, const SeededStream& stream) {
  if (set.empty()) throw EmptyEquilibriumSet();
  const auto profiles = set.profiles();
  switch (metric) {
    case DesignMetric::Welfare:
      return average_outcome(config, spec, profiles, OutcomeMetric::Welfare, options, stream);
    case DesignMetric::Profit:
      return average_outcome(config, spec, profiles, OutcomeMetric::Profit, options, stream);
    case DesignMetric::MeanAlpha:
    case DesignMetric::MeanBetaOverAlpha: {
      Eigen::VectorXd params(static_cast<Eigen::Index>(profiles.size()));
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        params[i] = metric == DesignMetric::MeanAlpha ? alpha_of(profiles[i].strategy)
                                                      : beta_over_alpha(profiles[i].strategy);
      }
      return summarize(params);
    }
    case DesignMetric::RegretOfTruthful:
      return average_deviation_loss(config, spec, profiles,
                                    truthful(class_of(profiles.front().strategy)), options,
                                    stream);
  }
  throw std::logic_error("unhandled design metric");
}

}  // namespace gspsim
