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

#include "gspsim/monte_carlo_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace gspsim {
namespace {

void check_inputs(const AuctionConfig& config, const DistributionSpec& spec,
                  const SamplingOptions& options) {
  config.validate();
  spec.validate();
  if (options.samples < 2) throw std::invalid_argument("need at least two samples");
}

void check_deviation(const AuctionConfig& config, const std::optional<Deviation>& deviation) {
  if (deviation && (deviation->player < 0 || deviation->player >= config.players)) {
    throw std::invalid_argument("deviant index out of range");
  }
}

}  // namespace

Estimate summarize(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  const auto n = samples.size();
  if (n == 0) throw std::invalid_argument("cannot summarize zero samples");
  Estimate e;
  e.n_samples = n;
  e.mean = samples.mean();
  if (n > 1) {
    const double ss = (samples.array() - e.mean).square().sum();
    e.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return e;
}

Estimate ratio_estimate(const Eigen::Ref<const Eigen::VectorXd>& numerator,
                        const Eigen::Ref<const Eigen::VectorXd>& denominator) {
  if (numerator.size() != denominator.size() || numerator.size() < 2) {
    throw std::invalid_argument("ratio needs paired samples");
  }
  const auto n = static_cast<double>(numerator.size());
  const double mx = numerator.mean();
  const double my = denominator.mean();
  if (my == 0.0) throw std::domain_error("ratio with zero mean denominator");
  const double r = mx / my;
  // Linearized residuals x - r y.
  const Eigen::ArrayXd resid = numerator.array() - r * denominator.array();
  const double var = resid.square().sum() / (n - 1.0);
  return {r, std::sqrt(var / n) / std::abs(my), numerator.size()};
}

const RealizedOutcome& SampleContext::play(const AuctionConfig& config,
                                           const SymmetricProfile& profile,
                                           const std::optional<Deviation>& deviation) {
  const int m = types.players();
  bids.resize(m);
  for (int i = 0; i < m; ++i) bids[i] = bid(profile.strategy, types.values[i]);
  if (deviation) bids[deviation->player] = bid(deviation->strategy, types.values[deviation->player]);
  realize_into(config, types.values, types.qualities, bids, scratch, outcome);
  return outcome;
}

Eigen::VectorXd sample_payoffs(const AuctionConfig& config, const DistributionSpec& spec,
                               const SymmetricProfile& profile,
                               const std::optional<Deviation>& deviation, Engine& engine) {
  config.validate();
  spec.validate();
  check_deviation(config, deviation);
  SampleContext ctx;
  sample_profile_into(spec, config.players, engine, ctx.types);
  return ctx.play(config, profile, deviation).utilities;
}

Eigen::VectorXd sample_payoffs(const AuctionConfig& config, const DistributionSpec& spec,
                               const SymmetricProfile& profile,
                               const std::optional<Deviation>& deviation,
                               const SeededStream& stream) {
  Engine engine = make_engine(stream);
  return sample_payoffs(config, spec, profile, deviation, engine);
}

Estimate expected_utility(const AuctionConfig& config, const DistributionSpec& spec,
                          const SymmetricProfile& profile,
                          const std::optional<Deviation>& deviation,
                          const SamplingOptions& options, const SeededStream& stream) {
  check_inputs(config, spec, options);
  check_deviation(config, deviation);
  const int player = deviation ? deviation->player : 0;
  return summarize(simulate(spec, config.players, options, stream, [&](SampleContext& ctx) {
    return ctx.play(config, profile, deviation).utilities[player];
  }));
}

Estimate estimate_regret(const AuctionConfig& config, const DistributionSpec& spec,
                         const SymmetricProfile& profile, const Strategy& candidate,
                         const SamplingOptions& options, const SeededStream& stream) {
  return estimate_regret_ratio(config, spec, profile, candidate, options, stream).regret;
}

RegretRatio estimate_regret_ratio(const AuctionConfig& config, const DistributionSpec& spec,
                                  const SymmetricProfile& profile, const Strategy& candidate,
                                  const SamplingOptions& options, const SeededStream& stream) {
  check_inputs(config, spec, options);
  const Deviation deviation{0, candidate};
  const Eigen::VectorXd gain =
      simulate(spec, config.players, options, stream, [&](SampleContext& ctx) {
        const double deviating = ctx.play(config, profile, deviation).utilities[0];
        const double staying = ctx.play(config, profile).utilities[0];
        return deviating - staying;
      });
  // Second pass on the same draws for the payoff; cheaper than threading two
  // outputs through simulate().
  const Eigen::VectorXd payoff = simulate(spec, config.players, options, stream, [&](SampleContext& ctx) {
    return ctx.play(config, profile).utilities[0];
  });
  RegretRatio out;
  out.regret = summarize(gain);
  out.payoff = summarize(payoff);
  if (out.payoff.mean != 0.0) out.ratio = ratio_estimate(gain, payoff);
  return out;
}

Estimate expected_welfare(const AuctionConfig& config, const DistributionSpec& spec,
                          const SymmetricProfile& profile, const SamplingOptions& options,
                          const SeededStream& stream) {
  return average_outcome(config, spec, std::span(&profile, 1), OutcomeMetric::Welfare,
                         options, stream);
}

Estimate expected_profit(const AuctionConfig& config, const DistributionSpec& spec,
                         const SymmetricProfile& profile, const SamplingOptions& options,
                         const SeededStream& stream) {
  return average_outcome(config, spec, std::span(&profile, 1), OutcomeMetric::Profit,
                         options, stream);
}

Estimate average_outcome(const AuctionConfig& config, const DistributionSpec& spec,
                         std::span<const SymmetricProfile> profiles, OutcomeMetric metric,
                         const SamplingOptions& options, const SeededStream& stream) {
  check_inputs(config, spec, options);
  if (profiles.empty()) throw std::invalid_argument("no profiles to average");
  const double scale = 1.0 / static_cast<double>(profiles.size());
  return summarize(simulate(spec, config.players, options, stream, [&](SampleContext& ctx) {
    double total = 0.0;
    for (const auto& p : profiles) {
      const auto& o = ctx.play(config, p);
      total += metric == OutcomeMetric::Welfare ? o.welfare : o.profit;
    }
    return total * scale;
  }));
}

Estimate average_deviation_loss(const AuctionConfig& config, const DistributionSpec& spec,
                                std::span<const SymmetricProfile> profiles,
                                const Strategy& deviation, const SamplingOptions& options,
                                const SeededStream& stream) {
  check_inputs(config, spec, options);
  if (profiles.empty()) throw std::invalid_argument("no profiles to average");
  const double scale = 1.0 / static_cast<double>(profiles.size());
  const Deviation dev{0, deviation};
  return summarize(simulate(spec, config.players, options, stream, [&](SampleContext& ctx) {
    double total = 0.0;
    for (const auto& p : profiles) {
      const double own = ctx.play(config, p).utilities[0];
      total += own - ctx.play(config, p, dev).utilities[0];
    }
    return total * scale;
  }));
}

Estimate profit_difference(const AuctionConfig& first_config,
                           std::span<const SymmetricProfile> first_profiles,
                           const AuctionConfig& second_config,
                           std::span<const SymmetricProfile> second_profiles,
                           const DistributionSpec& spec, const SamplingOptions& options,
                           const SeededStream& stream) {
  check_inputs(first_config, spec, options);
  second_config.validate();
  if (first_config.players != second_config.players) {
    throw std::invalid_argument("profit difference needs equal player counts");
  }
  if (first_profiles.empty() || second_profiles.empty()) {
    throw std::invalid_argument("no profiles to average");
  }
  const double first_scale = 1.0 / static_cast<double>(first_profiles.size());
  const double second_scale = 1.0 / static_cast<double>(second_profiles.size());
  return summarize(
      simulate(spec, first_config.players, options, stream, [&](SampleContext& ctx) {
        double first = 0.0;
        for (const auto& p : first_profiles) first += ctx.play(first_config, p).profit;
        double second = 0.0;
        for (const auto& p : second_profiles) second += ctx.play(second_config, p).profit;
        return first * first_scale - second * second_scale;
      }));
}

}  // namespace gspsim
