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

#include "gspsim/strategy_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gspsim {

std::string to_string(StrategyClass cls) {
  return cls == StrategyClass::Linear ? "linear" : "quadratic";
}

StrategyClass parse_strategy_class(std::string_view text) {
  if (text == "linear") return StrategyClass::Linear;
  if (text == "quadratic") return StrategyClass::Quadratic;
  throw std::invalid_argument("unknown strategy class '" + std::string(text) + "'");
}

LinearStrategy::LinearStrategy(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("linear strategy needs alpha in [0, 1]");
  }
}

QuadraticStrategy::QuadraticStrategy(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
  if (!(beta >= 0.0 && beta <= alpha && alpha <= 1.0)) {
    throw std::invalid_argument("quadratic strategy needs 0 <= beta <= alpha <= 1");
  }
}

QuadraticStrategy QuadraticStrategy::from_shading_endpoints(double at_zero,
                                                            double at_one) {
  return QuadraticStrategy(at_zero, at_zero - at_one);
}

double alpha_of(const Strategy& strategy) {
  return std::visit([](const auto& s) { return s.alpha(); }, strategy);
}

double beta_of(const Strategy& strategy) {
  if (const auto* quad = std::get_if<QuadraticStrategy>(&strategy)) return quad->beta();
  return 0.0;
}

StrategyClass class_of(const Strategy& strategy) {
  return std::holds_alternative<LinearStrategy>(strategy) ? StrategyClass::Linear
                                                          : StrategyClass::Quadratic;
}

double beta_over_alpha(const Strategy& strategy) {
  const double alpha = alpha_of(strategy);
  return alpha > 0.0 ? beta_of(strategy) / alpha : 0.0;
}

Strategy truthful(StrategyClass cls) {
  if (cls == StrategyClass::Linear) return LinearStrategy(1.0);
  return QuadraticStrategy(1.0, 0.0);
}

Strategy clamp_to_class(StrategyClass cls, double alpha, double beta) {
  const double a = std::clamp(alpha, 0.0, 1.0);
  if (cls == StrategyClass::Linear) return LinearStrategy(a);
  return QuadraticStrategy(a, std::clamp(beta, 0.0, a));
}

bool is_monotone_on_unit_interval(const QuadraticStrategy& strategy) {
  return strategy.alpha() >= 2.0 * strategy.beta();
}

double truthful_distance(double equilibrium_alpha) {
  if (!(equilibrium_alpha >= 0.0 && equilibrium_alpha <= 1.0)) {
    throw std::invalid_argument("equilibrium alpha must lie in [0, 1]");
  }
  return 1.0 - equilibrium_alpha;
}

std::string describe(const Strategy& strategy) {
  std::ostringstream os;
  os << to_string(class_of(strategy)) << "(alpha=" << alpha_of(strategy);
  if (class_of(strategy) == StrategyClass::Quadratic) os << ", beta=" << beta_of(strategy);
  os << ')';
  return os.str();
}

}  // namespace gspsim
