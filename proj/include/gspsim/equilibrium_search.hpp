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

#include "gspsim/monte_carlo_oracle.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gspsim {

/// Simulated-annealing schedule: geometric cooling and Gaussian proposals
/// whose sd shrinks linearly from `proposal_sd_initial` to `proposal_sd_final`.
struct AnnealingSchedule {
  int rounds = 100;
  double initial_temperature = 0.05;
  double cooling_factor = 0.95;
  double proposal_sd_initial = 0.2;
  double proposal_sd_final = 0.02;

  void validate() const;
  double temperature(int round) const;
  double proposal_sd(int round) const;
};

struct SearchOptions {
  AnnealingSchedule schedule;
  std::int64_t samples = 1000;  // oracle draws per candidate evaluation
  int threads = 1;
};

struct BestResponse {
  Strategy strategy;
  Estimate value;  // re-estimated on a fresh stream
};

/// Approximate best response of one player to `opponents`, searched within
/// the opponents' strategy class. All candidates are scored on the same
/// `options.samples` draws; the winner is then re-scored on an independent
/// stream so the reported value is not biased upward by the selection.
BestResponse approximate_best_response(const AuctionConfig& config,
                                       const DistributionSpec& spec,
                                       const SymmetricProfile& opponents,
                                       const SearchOptions& options,
                                       const SeededStream& stream);

struct TraceEntry {
  int iteration = 0;
  SymmetricProfile profile;
  Estimate regret;  // best-response value minus profile value
  Estimate payoff;  // profile value
  Strategy best_response;
};

struct BestResponseTrace {
  std::vector<TraceEntry> entries;
};

/// Iterative best-response dynamic. Entry 0 is `initial`; entry t is the
/// symmetric adoption of the best response to entry t - 1.
BestResponseTrace iterative_best_response(const AuctionConfig& config,
                                          const DistributionSpec& spec,
                                          const SymmetricProfile& initial, int max_iterations,
                                          const SearchOptions& options,
                                          const SeededStream& stream);

enum class ThresholdMode {
  Absolute,
  Relative,  // threshold is a fraction of each entry's payoff
};

struct EquilibriumEstimateSet {
  double threshold = 0.0;
  ThresholdMode mode = ThresholdMode::Absolute;
  std::vector<TraceEntry> members;

  bool empty() const { return members.empty(); }
  std::vector<SymmetricProfile> profiles() const;
};

EquilibriumEstimateSet select_equilibrium_set(const BestResponseTrace& trace,
                                              double threshold,
                                              ThresholdMode mode = ThresholdMode::Absolute);

enum class DesignMetric { Welfare, Profit, MeanAlpha, MeanBetaOverAlpha, RegretOfTruthful };

std::string to_string(DesignMetric metric);

/// Thrown by evaluate_design() when no profile cleared the threshold.
class EmptyEquilibriumSet : public std::runtime_error {
 public:
  EmptyEquilibriumSet() : std::runtime_error("no equilibrium estimate at this threshold") {}
};

/// Unweighted average of `metric` over the members of `set`. Outcome metrics
/// use common draws across members; parameter metrics report the spread over
/// members as their standard error.
Estimate evaluate_design(const AuctionConfig& config, const DistributionSpec& spec,
                         const EquilibriumEstimateSet& set, DesignMetric metric,
                         const SamplingOptions& options, const SeededStream& stream);

}  // namespace gspsim
