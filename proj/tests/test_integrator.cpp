// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "torusflow/integrator.hpp"

using namespace torusflow;

TEST_CASE("exponential growth hits e") {
  auto rhs = [](double, const std::array<double, 1>& y,
                std::array<double, 1>& dy) { dy[0] = y[0]; };
  IntegratorOptions opts{.tol = 1e-12};
  auto y = rk45_integrate<1>(rhs, 0.0, 1.0, {1.0}, opts);
  CHECK(y[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("harmonic oscillator preserves energy over many turns") {
  auto rhs = [](double, const std::array<double, 2>& y,
                std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  IntegratorOptions opts{.tol = 1e-11};
  auto y = rk45_integrate<2>(rhs, 0.0, 20.0 * two_pi, {1.0, 0.0}, opts);
  CHECK(y[0] * y[0] + y[1] * y[1] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(y[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("error scales with the tolerance") {
  auto rhs = [](double t, const std::array<double, 1>& y,
                std::array<double, 1>& dy) { dy[0] = std::cos(t) * y[0]; };
  const double exact = std::exp(std::sin(3.0));
  double loose = 0.0, tight = 0.0;
  {
    IntegratorOptions o{.tol = 1e-5};
    loose = std::abs(rk45_integrate<1>(rhs, 0.0, 3.0, {1.0}, o)[0] - exact);
  }
  {
    IntegratorOptions o{.tol = 1e-12};
    tight = std::abs(rk45_integrate<1>(rhs, 0.0, 3.0, {1.0}, o)[0] - exact);
  }
  CHECK(tight < loose);
  CHECK(tight < 1e-10);
}

TEST_CASE("breakpoint splitting agrees with plain integration when smooth") {
  auto rhs = [](double t, const std::array<double, 1>& y,
                std::array<double, 1>& dy) { dy[0] = std::sin(t) - 0.1 * y[0]; };
  IntegratorOptions opts{.tol = 1e-12};
  const std::vector<double> bkpts{1.0, 2.5, 4.0};
  auto a = rk45_integrate<1>(rhs, 0.0, 5.0, {0.3}, opts);
  auto b = rk45_integrate_split<1>(rhs, 0.0, 5.0, {0.3}, bkpts, opts);
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-10));
}

TEST_CASE("breakpoint splitting handles a genuinely nonsmooth right side") {
  // dy/dt = sign-like kink at t = 1; exact value is computable piecewise.
  auto rhs = [](double t, const std::array<double, 1>&,
                std::array<double, 1>& dy) { dy[0] = t < 1.0 ? 1.0 : -2.0; };
  IntegratorOptions opts{.tol = 1e-12};
  const std::vector<double> bkpts{1.0};
  auto y = rk45_integrate_split<1>(rhs, 0.0, 3.0, {0.0}, bkpts, opts);
  CHECK(y[0] == doctest::Approx(1.0 - 4.0).epsilon(1e-9));
}

TEST_CASE("rejects reversed time and reports blow-up") {
  auto rhs = [](double, const std::array<double, 1>& y,
                std::array<double, 1>& dy) { dy[0] = y[0] * y[0]; };
  CHECK_THROWS_AS(rk45_integrate<1>(rhs, 1.0, 0.0, {1.0}), PreconditionError);
  // y' = y^2, y(0) = 1 blows up at t = 1.
  CHECK_THROWS_AS(rk45_integrate<1>(rhs, 0.0, 2.0, {1.0}), NumericsError);
}
