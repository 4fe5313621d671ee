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

#include <string>
#include <string_view>
#include <variant>

namespace gspsim {

enum class StrategyClass { Linear, Quadratic };

std::string to_string(StrategyClass cls);
StrategyClass parse_strategy_class(std::string_view text);

/// Bid a fixed fraction of value: b(v) = alpha * v.
class LinearStrategy {
 public:
  explicit LinearStrategy(double alpha);

  double alpha() const { return alpha_; }
  double bid(double value) const { return alpha_ * value; }

  friend bool operator==(const LinearStrategy&, const LinearStrategy&) = default;

 private:
  double alpha_;
};

/// b(v) = alpha * v - beta * v^2 with 0 <= beta <= alpha <= 1.
///
/// Shading that falls linearly from `alpha` at v = 0 to `alpha - beta` at
/// v = 1. Bids are floored at zero, which only matters for values above
/// alpha / beta.
class QuadraticStrategy {
 public:
  QuadraticStrategy(double alpha, double beta);

  /// From the shading multiples at v = 0 and v = 1.
  static QuadraticStrategy from_shading_endpoints(double at_zero, double at_one);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double bid(double value) const {
    const double b = alpha_ * value - beta_ * value * value;
    return b > 0.0 ? b : 0.0;
  }

  friend bool operator==(const QuadraticStrategy&, const QuadraticStrategy&) = default;

 private:
  double alpha_;
  double beta_;
};

using Strategy = std::variant<LinearStrategy, QuadraticStrategy>;

inline double bid(const Strategy& strategy, double value) {
  if (const auto* linear = std::get_if<LinearStrategy>(&strategy)) {
    return linear->bid(value);
  }
  return std::get<QuadraticStrategy>(strategy).bid(value);
}

double alpha_of(const Strategy& strategy);
double beta_of(const Strategy& strategy);  // 0 for linear strategies
StrategyClass class_of(const Strategy& strategy);

/// beta / alpha, or 0 when alpha is 0 (which forces beta = 0).
double beta_over_alpha(const Strategy& strategy);

/// Truthful bidding within the given class.
Strategy truthful(StrategyClass cls);

/// Projects (alpha, beta) onto the feasible region of the class:
/// [0, 1] for linear, the triangle 0 <= beta <= alpha <= 1 for quadratic.
Strategy clamp_to_class(StrategyClass cls, double alpha, double beta = 0.0);

/// True iff the bid never decreases on [0, 1], i.e. alpha >= 2 beta.
bool is_monotone_on_unit_interval(const QuadraticStrategy& strategy);

/// Distance of an equilibrium shading multiple from truthful bidding.
double truthful_distance(double equilibrium_alpha);

std::string describe(const Strategy& strategy);

}  // namespace gspsim
