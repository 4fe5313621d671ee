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

#include "gspsim/regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gspsim {
namespace {

void check_points(const Eigen::Ref<const Eigen::VectorXd>& x,
                  const Eigen::Ref<const Eigen::VectorXd>& y, int degree) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("degree must be 1, 2 or 3");
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < degree + 1) {
    throw std::invalid_argument("need at least degree + 1 points");
  }
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("x values must be distinct");
  }
}

// Real roots of c0 + c1 x + c2 x^2.
std::vector<double> real_roots(const Eigen::VectorXd& c) {
  const double a = c.size() > 2 ? c[2] : 0.0;
  const double b = c.size() > 1 ? c[1] : 0.0;
  const double k = c[0];
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-k / b};
  }
  const double disc = b * b - 4.0 * a * k;
  if (disc < 0.0) return {};
  // Numerically stable pair.
  const double s = std::sqrt(disc);
  const double t = -0.5 * (b + std::copysign(s, b));
  if (t == 0.0) return {0.0};
  return {t / a, k / t};
}

}  // namespace

double PolynomialFit::operator()(double x) const {
  double acc = 0.0;
  for (Eigen::Index i = coefficients.size() - 1; i >= 0; --i) acc = acc * x + coefficients[i];
  return acc;
}

Eigen::VectorXd PolynomialFit::derivative() const {
  if (coefficients.size() <= 1) return Eigen::VectorXd::Zero(1);
  Eigen::VectorXd d(coefficients.size() - 1);
  for (Eigen::Index i = 1; i < coefficients.size(); ++i) d[i - 1] = i * coefficients[i];
  return d;
}

Eigen::VectorXd SweepResult::xs() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = points[i].q;
  return out;
}

Eigen::VectorXd SweepResult::ys() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = points[i].estimate.mean;
  return out;
}

PolynomialFit fit_polynomial(const Eigen::Ref<const Eigen::VectorXd>& x,
                             const Eigen::Ref<const Eigen::VectorXd>& y, int degree) {
  check_points(x, y, degree);
  const auto n = x.size();
  Eigen::MatrixXd design(n, degree + 1);
  design.col(0).setOnes();
  for (int p = 1; p <= degree; ++p) design.col(p) = design.col(p - 1).cwiseProduct(x);

  PolynomialFit fit;
  fit.degree = degree;
  fit.coefficients = design.colPivHouseholderQr().solve(y);

  const Eigen::VectorXd residual = y - design * fit.coefficients;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).square().sum();
  if (ss_tot == 0.0) {
    fit.r_squared = ss_res <= 1e-24 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  }
  return fit;
}

PolynomialFit select_fit(const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y, int max_degree,
                         double delta_r2_min) {
  if (max_degree < 1 || max_degree > 3) throw std::invalid_argument("max_degree must be 1..3");
  if (!(delta_r2_min >= 0.0)) throw std::invalid_argument("delta_r2_min must be non-negative");
  std::vector<PolynomialFit> fits;
  for (int degree = 1; degree <= max_degree; ++degree) fits.push_back(fit_polynomial(x, y, degree));
  // A degree is kept when no higher degree adds delta_r2_min or more. Odd
  // data on a symmetric grid gains nothing from 1 to 2 but a lot from 2 to 3.
  for (std::size_t d = 0; d + 1 < fits.size(); ++d) {
    double gain = 0.0;
    for (std::size_t h = d + 1; h < fits.size(); ++h) {
      gain = std::max(gain, fits[h].r_squared - fits[d].r_squared);
    }
    if (gain < delta_r2_min) return fits[d];
  }
  return fits.back();
}

Optimum argopt_on_unit_interval(const PolynomialFit& fit, Sense sense) {
  std::vector<double> candidates{0.0, 1.0};
  for (double r : real_roots(fit.derivative())) {
    if (r > 0.0 && r < 1.0) candidates.push_back(r);
  }
  Optimum best{candidates.front(), fit(candidates.front())};
  for (double c : candidates) {
    const double v = fit(c);
    const bool better = sense == Sense::Maximize ? v > best.value : v < best.value;
    if (better) best = {c, v};
  }
  return best;
}

}  // namespace gspsim
