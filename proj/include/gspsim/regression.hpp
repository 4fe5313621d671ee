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

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace gspsim {

/// Least-squares polynomial, coefficients in ascending powers.
struct PolynomialFit {
  int degree = 0;
  Eigen::VectorXd coefficients;
  double r_squared = 0.0;

  double operator()(double x) const;
  Eigen::VectorXd derivative() const;
};

struct SweepPoint {
  double q = 0.0;
  Estimate estimate;
};

/// Metric estimates along the q axis, with an optional smoothing fit.
struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<PolynomialFit> fitted;

  Eigen::VectorXd xs() const;
  Eigen::VectorXd ys() const;
};

/// Ordinary least squares of degree 1, 2 or 3. Requires distinct x and at
/// least degree + 1 points. R^2 is taken as 1 when y is constant and fitted
/// exactly.
PolynomialFit fit_polynomial(const Eigen::Ref<const Eigen::VectorXd>& x,
                             const Eigen::Ref<const Eigen::VectorXd>& y, int degree);

/// Lowest degree that no higher degree (up to `max_degree`) improves on by
/// `delta_r2_min` or more in R^2.
PolynomialFit select_fit(const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y, int max_degree = 3,
                         double delta_r2_min = 0.05);

enum class Sense { Minimize, Maximize };

struct Optimum {
  double q = 0.0;
  double value = 0.0;
};

/// Optimum of the fitted polynomial over [0, 1] from its stationary points
/// and the endpoints.
Optimum argopt_on_unit_interval(const PolynomialFit& fit, Sense sense);

}  // namespace gspsim
