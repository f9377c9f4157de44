// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "torusflow/trig_poly.hpp"

using namespace torusflow;

namespace {

// Straightforward term-by-term evaluation, no recurrences.
double eval_direct(const TrigPoly& p, double x) {
  double acc = p.constant_term();
  for (const Harmonic& h : p.harmonics())
    acc += h.cos_coeff * std::cos(h.degree * x) +
           h.sin_coeff * std::sin(h.degree * x);
  return acc;
}

}  // namespace

TEST_CASE("evaluation matches direct summation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  for (int trial = 0; trial < 20; ++trial) {
    TrigPoly p = oracles::random_poly(rng, 8, 1.0, 0.5);
    for (int i = 0; i < 50; ++i) {
      const double x = ux(rng);
      CHECK(p(x) == doctest::Approx(eval_direct(p, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sparse polynomials evaluate correctly") {
  TrigPoly p;
  p.add_harmonic(3, 0.25, -0.5);
  p.add_harmonic(7, 1.0, 2.0);
  for (double x : {0.0, 0.1, 1.7, 4.0, -3.3})
    CHECK(p(x) == doctest::Approx(eval_direct(p, x)).epsilon(1e-13));
}

TEST_CASE("derivative matches centered finite differences") {
  std::mt19937_64 rng(11);
  TrigPoly p = oracles::random_poly(rng, 5, 1.0, 1.0);
  TrigPoly dp = derivative(p);
  const double h = 1e-6;
  for (double x : {0.3, 1.1, 2.9, 5.5}) {
    const double fd = (p(x + h) - p(x - h)) / (2.0 * h);
    CHECK(dp(x) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(derivative(TrigPoly(3.5)).is_constant());
  CHECK(derivative(TrigPoly(3.5)).constant_term() == 0.0);
}

TEST_CASE("canonicalization accumulates and drops tiny harmonics") {
  TrigPoly p;
  p.add_harmonic(2, 1.0, 0.0);
  p.add_harmonic(2, -1.0, 0.0);  // cancels below drop_tol
  CHECK(p.is_constant());

  TrigPoly q;
  q.add_harmonic(4, 0.5, 0.0);
  q.add_harmonic(2, 0.0, 1.0);
  REQUIRE(q.harmonics().size() == 2);
  CHECK(q.harmonics()[0].degree == 2);  // sorted ascending
  CHECK(q.harmonics()[1].degree == 4);
  CHECK(q.max_degree() == 4);
  CHECK_THROWS_AS(q.add_harmonic(0, 1.0, 0.0), PreconditionError);
}

TEST_CASE("harmonic gcd and special form detection") {
  CHECK(!harmonic_gcd(TrigPoly(2.0)).has_value());
  CHECK(*harmonic_gcd(TrigPoly::sine(1)) == 1);
  TrigPoly p;
  p.add_harmonic(4, 1.0, 0.0);
  p.add_harmonic(6, 0.0, 1.0);
  CHECK(*harmonic_gcd(p) == 2);

  CHECK(is_special_form(TrigPoly(1.0)).special);
  CHECK(!is_special_form(TrigPoly(1.0)).m.has_value());
  auto s = is_special_form(TrigPoly::sine(3, 2.0));
  CHECK(s.special);
  CHECK(*s.m == 3);
  CHECK(!is_special_form(p).special);
}

TEST_CASE("quotient field divides degrees and preserves values") {
  TrigPoly p(0.25);
  p.add_harmonic(2, 0.7, -0.3);
  p.add_harmonic(6, 0.1, 0.2);
  TrigPoly q = quotient_field(p, 2);
  CHECK(q.max_degree() == 3);
  // q(y) with y = 2x reproduces p(x).
  for (double x : {0.0, 0.4, 1.9, 3.1})
    CHECK(q(2.0 * x) == doctest::Approx(p(x)).epsilon(1e-14));
  CHECK_THROWS_AS(quotient_field(p, 4), PreconditionError);
}

TEST_CASE("Fourier truncation is exact on band-limited input") {
  std::mt19937_64 rng(23);
  TrigPoly p = oracles::random_poly(rng, 6, 1.0, 0.8);
  const int N = 8, n = 8 * N + 8;
  std::vector<double> samples(n);
  for (int j = 0; j < n; ++j) samples[j] = p(two_pi * j / n);
  TrigPoly t = truncate_fourier(samples, N);
  for (double x : {0.0, 0.3, 2.2, 5.9})
    CHECK(t(x) == doctest::Approx(p(x)).epsilon(1e-12));
}

TEST_CASE("Fourier truncation converges spectrally on smooth input") {
  auto f = [](double t) { return std::exp(std::sin(t)); };
  double prev = 1e300;
  for (int N : {4, 8, 16}) {
    const int n = 8 * N + 8;
    std::vector<double> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = f(two_pi * j / n);
    TrigPoly t = truncate_fourier(samples, N);
    double err = 0.0;
    for (int j = 0; j < 257; ++j) {
      const double x = two_pi * j / 257.0;
      err = std::max(err, std::abs(t(x) - f(x)));
    }
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("Fourier truncation rejects undersampled input") {
  std::vector<double> samples(16, 0.0);
  CHECK_THROWS_AS(truncate_fourier(samples, 4), PreconditionError);
  CHECK_THROWS_AS(truncate_fourier(samples, -1), PreconditionError);
}
