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

#include "gspsim/random.hpp"
#include "gspsim/regression.hpp"

#include <doctest.h>

#include <cmath>

using namespace gspsim;

namespace {

Eigen::VectorXd grid(int n) { return Eigen::VectorXd::LinSpaced(n, 0.0, 1.0); }

template <class F>
Eigen::VectorXd apply(const Eigen::VectorXd& x, F f) {
  Eigen::VectorXd y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return y;
}

double rss(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& coef) {
  PolynomialFit f;
  f.coefficients = coef;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(y[i] - f(x[i]), 2);
  return s;
}

}  // namespace

TEST_CASE("exact recovery of noiseless polynomials") {
  const Eigen::VectorXd x = grid(11);

  const auto line = fit_polynomial(x, apply(x, [](double t) { return 2 * t + 1; }), 1);
  CHECK(line.degree == 1);
  CHECK(line.coefficients[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(line.coefficients[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(line.r_squared == doctest::Approx(1.0));

  const auto quad = fit_polynomial(x, apply(x, [](double t) { return 0.5 - 3 * t + 4 * t * t; }), 2);
  CHECK(std::abs(quad.coefficients[0] - 0.5) < 1e-9);
  CHECK(std::abs(quad.coefficients[1] + 3.0) < 1e-9);
  CHECK(std::abs(quad.coefficients[2] - 4.0) < 1e-9);

  const auto cubic = fit_polynomial(x, apply(x, [](double t) { return t * t * t; }), 3);
  CHECK(std::abs(cubic.coefficients[3] - 1.0) < 1e-9);
  CHECK(std::abs(cubic.coefficients[0]) < 1e-9);
  CHECK(cubic.r_squared == doctest::Approx(1.0));
}

TEST_CASE("constant data has R^2 = 1") {
  const Eigen::Vector3d x(0.0, 0.5, 1.0);
  const auto f = fit_polynomial(x, Eigen::Vector3d(1.0, 1.0, 1.0), 2);
  CHECK(f.coefficients[0] == doctest::Approx(1.0));
  CHECK(std::abs(f.coefficients[1]) < 1e-12);
  CHECK(std::abs(f.coefficients[2]) < 1e-12);
  CHECK(f.r_squared == 1.0);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_polynomial(Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 1), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_polynomial(Eigen::Vector3d(0, 0.5, 0.5), Eigen::Vector3d(0, 1, 2), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_polynomial(grid(6), grid(6), 4), std::invalid_argument);
  CHECK_THROWS_AS(fit_polynomial(grid(6), grid(5), 1), std::invalid_argument);
}

TEST_CASE("least squares is locally optimal and R^2 nests") {
  Engine engine = make_engine({31, 0});
  std::normal_distribution<double> noise(0.0, 0.1);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd x = grid(11);
    const Eigen::VectorXd y = apply(x, [&](double t) { return std::sin(3 * t) + noise(engine); });
    double prev_r2 = -1.0;
    for (int degree = 1; degree <= 3; ++degree) {
      const auto fit = fit_polynomial(x, y, degree);
      CHECK(fit.r_squared >= prev_r2 - 1e-12);
      prev_r2 = fit.r_squared;
      const double base = rss(x, y, fit.coefficients);
      for (Eigen::Index i = 0; i <= degree; ++i) {
        for (double h : {-1e-3, 1e-3}) {
          Eigen::VectorXd c = fit.coefficients;
          c[i] += h;
          CHECK(rss(x, y, c) >= base);
        }
      }
    }
  }
}

TEST_CASE("degree selection") {
  const Eigen::VectorXd x = grid(11);
  CHECK(select_fit(x, apply(x, [](double t) { return 3 - t; })).degree == 1);
  const Eigen::VectorXd cubic = apply(x, [](double t) { return std::pow(2 * t - 1, 3); });
  CHECK(select_fit(x, cubic).degree == 3);
  CHECK(fit_polynomial(x, cubic, 3).r_squared - fit_polynomial(x, cubic, 2).r_squared > 0.05);
  CHECK(select_fit(x, apply(x, [](double t) { return 3 - t; }), 3, 0.0).degree == 3);
  CHECK(select_fit(x, apply(x, [](double t) { return t * t; })).degree <= 2);
  CHECK(select_fit(x, cubic, 2).degree == 1);  // symmetric cubic: no quadratic gain
}

TEST_CASE("optimum over the unit interval") {
  PolynomialFit line;
  line.degree = 1;
  line.coefficients = Eigen::Vector2d(0.0, 1.0);
  auto hi = argopt_on_unit_interval(line, Sense::Maximize);
  auto lo = argopt_on_unit_interval(line, Sense::Minimize);
  CHECK(hi.q == 1.0);
  CHECK(hi.value == 1.0);
  CHECK(lo.q == 0.0);
  CHECK(lo.value == 0.0);

  PolynomialFit hump;
  hump.degree = 2;
  hump.coefficients = Eigen::Vector3d(1.0 - 0.09, 0.6, -1.0);  // -(x - 0.3)^2 + 1
  hi = argopt_on_unit_interval(hump, Sense::Maximize);
  CHECK(hi.q == doctest::Approx(0.3));
  CHECK(hi.value == doctest::Approx(1.0));

  PolynomialFit cubic;
  cubic.degree = 3;
  cubic.coefficients = Eigen::Vector4d(0.0, -1.0, 0.0, 1.0);
  lo = argopt_on_unit_interval(cubic, Sense::Minimize);
  CHECK(lo.q == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(lo.value == doctest::Approx(-2.0 / (3.0 * std::sqrt(3.0))));
}

TEST_CASE("sweep result accessors") {
  SweepResult s;
  s.points = {{0.0, {1.0, 0.1, 10}}, {0.5, {2.0, 0.1, 10}}};
  CHECK(s.xs() == Eigen::Vector2d(0.0, 0.5));
  CHECK(s.ys() == Eigen::Vector2d(1.0, 2.0));
}
