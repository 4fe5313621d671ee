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

#include "gspsim/auction_core.hpp"
#include "gspsim/parallel.hpp"
#include "gspsim/random.hpp"
#include "gspsim/strategy_space.hpp"
#include "gspsim/type_distributions.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gspsim {

/// Sample mean with its standard error (sample sd / sqrt(n)).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
};

Estimate summarize(const Eigen::Ref<const Eigen::VectorXd>& samples);

/// mean(numerator) / mean(denominator), standard error by the delta method on
/// paired samples.
Estimate ratio_estimate(const Eigen::Ref<const Eigen::VectorXd>& numerator,
                        const Eigen::Ref<const Eigen::VectorXd>& denominator);

/// Every player uses the same strategy.
struct SymmetricProfile {
  Strategy strategy;
};

/// One player unilaterally switching strategy. By ex-ante symmetry player 0
/// serves as the representative deviant.
struct Deviation {
  int player = 0;
  Strategy strategy;
};

struct SamplingOptions {
  std::int64_t samples = 1000;
  int threads = 1;
};

/// Per-worker scratch handed to simulate() callbacks.
struct SampleContext {
  TypeProfile types;
  Eigen::VectorXd bids;
  AuctionScratch scratch;
  RealizedOutcome outcome;

  /// Bids under `profile` (and `deviation`, if any), then runs the auction.
  const RealizedOutcome& play(const AuctionConfig& config, const SymmetricProfile& profile,
                              const std::optional<Deviation>& deviation = std::nullopt);
};

/// Draws `options.samples` type profiles and returns per_sample(ctx) for each.
///
/// Sample k always comes from chunk k / kSamplesPerChunk of `stream`, so two
/// calls on the same stream see the same type draws (common random numbers)
/// and the result is independent of `options.threads`.
template <class Fn>
Eigen::VectorXd simulate(const DistributionSpec& spec, int players,
                         const SamplingOptions& options, const SeededStream& stream,
                         Fn&& per_sample) {
  const std::int64_t n = options.samples;
  Eigen::VectorXd out(n);
  const std::int64_t chunks = (n + kSamplesPerChunk - 1) / kSamplesPerChunk;
  std::vector<SampleContext> contexts(resolve_threads(options.threads));
  parallel_for(chunks, options.threads, [&](std::int64_t chunk, int worker) {
    SampleContext& ctx = contexts[worker];
    Engine engine = make_engine(stream, static_cast<std::uint64_t>(chunk));
    const std::int64_t end = std::min(n, (chunk + 1) * kSamplesPerChunk);
    for (std::int64_t k = chunk * kSamplesPerChunk; k < end; ++k) {
      sample_profile_into(spec, players, engine, ctx.types);
      out[k] = per_sample(ctx);
    }
  });
  return out;
}

/// One unbiased payoff vector: draws a type profile, maps values to bids and
/// runs the auction.
Eigen::VectorXd sample_payoffs(const AuctionConfig& config, const DistributionSpec& spec,
                               const SymmetricProfile& profile,
                               const std::optional<Deviation>& deviation, Engine& engine);

Eigen::VectorXd sample_payoffs(const AuctionConfig& config, const DistributionSpec& spec,
                               const SymmetricProfile& profile,
                               const std::optional<Deviation>& deviation,
                               const SeededStream& stream);

/// Ex-ante expected utility of the deviant (player 0 without a deviation).
Estimate expected_utility(const AuctionConfig& config, const DistributionSpec& spec,
                          const SymmetricProfile& profile,
                          const std::optional<Deviation>& deviation,
                          const SamplingOptions& options, const SeededStream& stream);

/// Gain of a single player switching to `candidate` while everyone else keeps
/// `profile`, estimated on common random numbers. Self-deviation gives 0.
Estimate estimate_regret(const AuctionConfig& config, const DistributionSpec& spec,
                         const SymmetricProfile& profile, const Strategy& candidate,
                         const SamplingOptions& options, const SeededStream& stream);

struct RegretRatio {
  Estimate regret;
  Estimate payoff;
  Estimate ratio;  // regret / payoff
};

/// Regret and payoff of `profile` from the same draws.
RegretRatio estimate_regret_ratio(const AuctionConfig& config, const DistributionSpec& spec,
                                  const SymmetricProfile& profile, const Strategy& candidate,
                                  const SamplingOptions& options, const SeededStream& stream);

Estimate expected_welfare(const AuctionConfig& config, const DistributionSpec& spec,
                          const SymmetricProfile& profile, const SamplingOptions& options,
                          const SeededStream& stream);

Estimate expected_profit(const AuctionConfig& config, const DistributionSpec& spec,
                         const SymmetricProfile& profile, const SamplingOptions& options,
                         const SeededStream& stream);

enum class OutcomeMetric { Welfare, Profit };

/// Per draw, the metric averaged over `profiles`; then the Monte Carlo mean.
Estimate average_outcome(const AuctionConfig& config, const DistributionSpec& spec,
                         std::span<const SymmetricProfile> profiles, OutcomeMetric metric,
                         const SamplingOptions& options, const SeededStream& stream);

/// Per draw, the average over `profiles` of u(own strategy) - u(deviate to
/// `deviation`) for player 0.
Estimate average_deviation_loss(const AuctionConfig& config, const DistributionSpec& spec,
                                std::span<const SymmetricProfile> profiles,
                                const Strategy& deviation, const SamplingOptions& options,
                                const SeededStream& stream);

/// Profit under `first` minus profit under `second` on common draws; each side
/// averages its own profile set.
Estimate profit_difference(const AuctionConfig& first_config,
                           std::span<const SymmetricProfile> first_profiles,
                           const AuctionConfig& second_config,
                           std::span<const SymmetricProfile> second_profiles,
                           const DistributionSpec& spec, const SamplingOptions& options,
                           const SeededStream& stream);

}  // namespace gspsim
