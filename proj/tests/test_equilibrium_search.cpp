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
#include "oracles.hpp"

#include <doctest.h>

using namespace gspsim;

namespace {

AuctionConfig one_slot(int m, double q) {
  AuctionConfig c = AuctionConfig::full(m, q);
  c.slots = 1;
  return c;
}

TraceEntry entry(int t, double alpha, double regret) {
  return TraceEntry{t, {LinearStrategy(alpha)}, {regret, 0.0, 100}, {0.1, 0.0, 100},
                    LinearStrategy(alpha)};
}

const DistributionSpec kUniform{};

}  // namespace

TEST_CASE("annealing schedule") {
  AnnealingSchedule s;
  CHECK_NOTHROW(s.validate());
  CHECK(s.temperature(0) == 0.05);
  CHECK(s.temperature(2) == doctest::Approx(0.05 * 0.95 * 0.95));
  CHECK(s.proposal_sd(0) == 0.2);
  CHECK(s.proposal_sd(99) == doctest::Approx(0.02));
  AnnealingSchedule bad = s;
  bad.rounds = 0;
  CHECK_THROWS(bad.validate());
  bad = s;
  bad.cooling_factor = 1.0;
  CHECK_THROWS(bad.validate());
  bad = s;
  bad.proposal_sd_final = 0.3;
  CHECK_THROWS(bad.validate());
  bad = s;
  bad.initial_temperature = 0.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("best response to truthful bidders in a one-slot auction is truthful") {
  const BestResponse br = approximate_best_response(one_slot(5, 0.0), kUniform,
                                                    {LinearStrategy(1.0)}, {}, SeededStream{1, 0});
  CHECK(alpha_of(br.strategy) >= 0.95);
  CHECK(alpha_of(br.strategy) <= 1.05);
}

TEST_CASE("best response against zero bids") {
  const AuctionConfig c = AuctionConfig::full(4, 0.5);
  const SymmetricProfile zero{LinearStrategy(0.0)};
  const BestResponse br = approximate_best_response(c, kUniform, zero, {}, SeededStream{2, 0});
  const Estimate stay =
      expected_utility(c, kUniform, zero, std::nullopt, {1000, 1}, SeededStream{2, 1});
  CHECK(alpha_of(br.strategy) > 0.0);
  CHECK(br.value.mean >= stay.mean);
}

TEST_CASE("best response is reproducible") {
  const AuctionConfig c = AuctionConfig::full(4, 0.3);
  const SymmetricProfile p{QuadraticStrategy(0.7, 0.1)};
  const auto a = approximate_best_response(c, kUniform, p, {}, SeededStream{3, 9});
  const auto b = approximate_best_response(c, kUniform, p, {}, SeededStream{3, 9});
  CHECK(a.strategy == b.strategy);
  CHECK(a.value.mean == b.value.mean);
  CHECK(class_of(a.strategy) == StrategyClass::Quadratic);
}

TEST_CASE("iterative best response") {
  SUBCASE("single iteration") {
    const auto trace = iterative_best_response(AuctionConfig::full(3, 0.5), kUniform,
                                               {LinearStrategy(0.5)}, 1, {}, SeededStream{4, 0});
    REQUIRE(trace.entries.size() == 1);
    CHECK(trace.entries[0].iteration == 0);
    CHECK(alpha_of(trace.entries[0].profile.strategy) == 0.5);
  }
  SUBCASE("one-slot truthful start stays an equilibrium") {
    const auto trace = iterative_best_response(one_slot(5, 0.0), kUniform, {LinearStrategy(1.0)},
                                               5, {}, SeededStream{5, 0});
    for (const auto& e : trace.entries) {
      CHECK(e.regret.mean <= 4.0 * e.regret.std_error + 1e-12);
      CHECK(alpha_of(e.profile.strategy) >= 0.9);
    }
  }
  SUBCASE("one-slot dynamic from alpha = 0.5 moves to truthful") {
    const auto trace = iterative_best_response(one_slot(5, 0.0), kUniform, {LinearStrategy(0.5)},
                                               8, {}, SeededStream{6, 0});
    for (std::size_t t = 1; t < trace.entries.size(); ++t) {
      const double a = alpha_of(trace.entries[t].profile.strategy);
      CHECK(a >= 0.9);
      CHECK(a <= 1.1);
    }
    // Fresh, larger re-estimates of member regrets stay near the threshold.
    const auto set = select_equilibrium_set(trace, 0.005);
    REQUIRE_FALSE(set.empty());
    int ok = 0;
    for (const auto& m : set.members) {
      const Estimate r = estimate_regret(one_slot(5, 0.0), kUniform, m.profile, m.best_response,
                                         {20000, 1}, SeededStream{6, 99});
      if (r.mean <= 0.005 + 4.0 * r.std_error) ++ok;
    }
    CHECK(ok >= 0.9 * static_cast<double>(set.members.size()));
  }
  SUBCASE("quadratic profiles stay feasible") {
    const auto trace = iterative_best_response(AuctionConfig::full(4, 0.5), kUniform,
                                               {QuadraticStrategy(0.5, 0.0)}, 4, {},
                                               SeededStream{7, 0});
    for (const auto& e : trace.entries) {
      const double a = alpha_of(e.profile.strategy);
      const double b = beta_of(e.profile.strategy);
      CHECK(0.0 <= b);
      CHECK(b <= a);
      CHECK(a <= 1.0);
      CHECK(std::isfinite(e.regret.mean));
    }
  }
  CHECK_THROWS(iterative_best_response(AuctionConfig::full(3, 0.5), kUniform,
                                       {LinearStrategy(0.5)}, 0, {}, SeededStream{4, 0}));
}

TEST_CASE("equilibrium set selection") {
  BestResponseTrace trace;
  trace.entries = {entry(0, 0.5, 0.02), entry(1, 0.6, 0.004), entry(2, 0.7, 0.009)};
  CHECK(select_equilibrium_set(trace, 1e9).members.size() == 3);
  CHECK(select_equilibrium_set(trace, 0.001).empty());
  const auto set = select_equilibrium_set(trace, 0.01);
  REQUIRE(set.members.size() == 2);
  CHECK(set.members[0].iteration == 1);
  CHECK(set.members[1].iteration == 2);
  CHECK_THROWS(select_equilibrium_set(trace, 0.0));
  // Relative: 0.1 * payoff 0.1 = 0.01 bound.
  CHECK(select_equilibrium_set(trace, 0.1, ThresholdMode::Relative).members.size() == 2);
}

TEST_CASE("threshold monotonicity") {
  Engine engine = make_engine({8, 0});
  for (int trial = 0; trial < 100; ++trial) {
    BestResponseTrace trace;
    for (int t = 0; t < 20; ++t) trace.entries.push_back(entry(t, uniform01(engine), 0.02 * uniform01(engine)));
    const double a = 0.001 + 0.02 * uniform01(engine);
    const double b = a + 0.01 * uniform01(engine);
    const auto small = select_equilibrium_set(trace, a);
    const auto large = select_equilibrium_set(trace, b);
    for (const auto& m : small.members) {
      CHECK(std::any_of(large.members.begin(), large.members.end(),
                        [&](const TraceEntry& e) { return e.iteration == m.iteration; }));
    }
    for (const auto& e : trace.entries) {
      const bool in = std::any_of(small.members.begin(), small.members.end(),
                                  [&](const TraceEntry& s) { return s.iteration == e.iteration; });
      CHECK(in == (e.regret.mean <= a));
    }
  }
}

TEST_CASE("evaluate_design") {
  const AuctionConfig c = AuctionConfig::full(4, 1.0);
  EquilibriumEstimateSet set;
  set.threshold = 0.01;
  set.members = {entry(0, 0.4, 0.0)};
  const SamplingOptions opts{5000, 1};
  const SeededStream stream{9, 0};

  SUBCASE("singleton") {
    const Estimate w = evaluate_design(c, kUniform, set, DesignMetric::Welfare, opts, stream);
    CHECK(w.mean == expected_welfare(c, kUniform, set.members[0].profile, opts, stream).mean);
    CHECK(evaluate_design(c, kUniform, set, DesignMetric::MeanAlpha, opts, stream).mean == 0.4);
  }
  SUBCASE("parameter averages") {
    set.members.push_back(entry(1, 0.6, 0.0));
    CHECK(evaluate_design(c, kUniform, set, DesignMetric::MeanAlpha, opts, stream).mean ==
          doctest::Approx(0.5));
    CHECK(evaluate_design(c, kUniform, set, DesignMetric::MeanBetaOverAlpha, opts, stream).mean == 0.0);
  }
  SUBCASE("rank by revenue welfare equals the brute-force optimum") {
    set.members.push_back(entry(1, 0.9, 0.0));
    const Estimate w = evaluate_design(c, kUniform, set, DesignMetric::Welfare, opts, stream);
    const Estimate best = summarize(simulate(kUniform, 4, opts, stream, [&](SampleContext& ctx) {
      return oracle::brute_force_max_welfare(c, ctx.types);
    }));
    CHECK(std::abs(w.mean - best.mean) <= 4.0 * w.std_error);
    CHECK(w.mean == doctest::Approx(best.mean).epsilon(1e-12));
  }
  SUBCASE("regret of truthful bidding against truthful members is zero") {
    set.members = {entry(0, 1.0, 0.0)};
    CHECK(evaluate_design(c, kUniform, set, DesignMetric::RegretOfTruthful, opts, stream).mean == 0.0);
  }
  SUBCASE("empty set") {
    set.members.clear();
    CHECK_THROWS_AS(evaluate_design(c, kUniform, set, DesignMetric::Profit, opts, stream),
                    EmptyEquilibriumSet);
  }
}

TEST_CASE("eight-player dynamic reaches a low-regret profile") {
  const AuctionConfig c = AuctionConfig::full(8, 0.5);
  for (std::uint64_t seed : {101, 202, 303}) {
    const auto trace =
        iterative_best_response(c, kUniform, {LinearStrategy(0.5)}, 30, {}, SeededStream{seed, 0});
    REQUIRE(trace.entries.size() == 30);
    double lowest = 1e9;
    for (const auto& e : trace.entries) lowest = std::min(lowest, e.regret.mean);
    CHECK(lowest <= 0.01);
  }
}
