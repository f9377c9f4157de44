// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "torusflow/flow.hpp"
#include "torusflow/word_flow.hpp"

using namespace torusflow;

TEST_CASE("level sets and the positive class") {
  GroupWord w({0.5, -0.2}, {2.0, two_pi - 2.0});
  CHECK(w.length() == 2);
  CHECK(w.level() == 1);
  CHECK(w.in_positive_class());
  CHECK(w.min_field_time() == doctest::Approx(2.0));

  GroupWord neg({0.0, 0.0}, {-1.0, two_pi + 1.0});
  CHECK(neg.level() == 1);
  CHECK(!neg.in_positive_class());

  GroupWord off({0.0}, {3.0});
  CHECK(!off.level().has_value());
  CHECK_THROWS_AS(GroupWord({1.0}, {1.0, 2.0}), PreconditionError);
}

TEST_CASE("word over the zero field is the total translation") {
  // flow of v = 0 is the identity, so the word collapses to x + sum t_j.
  GroupWord w({0.7, -1.1, 2.0}, {1.0, 2.0, two_pi - 3.0});
  const TrigPoly v{};
  for (double x : {0.0, 1.5, 4.0})
    CHECK(apply_word(w, v, x, 1e-12) ==
          doctest::Approx(x + 0.7 - 1.1 + 2.0).epsilon(1e-10));
}

TEST_CASE("single-factor word is shift after full-period field flow") {
  // g = T_t o flow_v(2*pi) equals the autonomous flow then a translation.
  GroupWord w({1.3}, {two_pi});
  const TrigPoly v = TrigPoly::sine(1);
  const TorusODE autonomous{v, 0.0, 0.0, TrigPoly{}};
  for (double x : {0.4, 2.0, 5.9}) {
    const double direct = integrate_lift(autonomous, 0.0, two_pi, x, 1e-12);
    CHECK(apply_word(w, v, x, 1e-12) ==
          doctest::Approx(direct + 1.3).epsilon(1e-10));
  }
}

TEST_CASE("word derivative matches finite differences") {
  GroupWord w({0.9, -0.4}, {2.5, two_pi - 2.5});
  const TrigPoly v = TrigPoly::sine(1).add_harmonic(2, 0.5, 0.0);
  const TrigPoly vp = derivative(v);
  const double h = 1e-6;
  for (double x : {0.1, 3.0}) {
    const auto [y, dy] = apply_word_with_derivative(w, v, vp, x, 1e-12);
    const double fd = (apply_word(w, v, x + h, 1e-12) -
                       apply_word(w, v, x - h, 1e-12)) / (2.0 * h);
    CHECK(dy == doctest::Approx(fd).epsilon(1e-5));
    CHECK(y == doctest::Approx(apply_word(w, v, x, 1e-12)).epsilon(1e-12));
  }
}

TEST_CASE("eval_word grid and exact evaluator agree") {
  GroupWord w({0.3, 0.8}, {1.7, two_pi - 1.7});
  const TrigPoly v = TrigPoly::sine(1, 0.8);
  const LiftedMap g = eval_word(w, v, 256, 1e-10);
  REQUIRE(g.has_exact());
  for (double x : {0.05, 2.8, 6.0})
    CHECK(g(x) == doctest::Approx(g.exact(x).first).epsilon(1e-4));
}

TEST_CASE("pin_word_parameter creates the requested periodic point") {
  const TrigPoly v = TrigPoly::sine(1).add_harmonic(2, 0.5, 0.0);
  GroupWord w({0.0, 1.0}, {2.0, two_pi - 2.0});
  const double x0 = std::numbers::pi;
  for (auto [p, q] : {std::pair<long, long>{0, 1}, {1, 2}, {1, 1}}) {
    const GroupWord pinned = pin_word_parameter(w, v, x0, p, q, 1e-12);
    double x = x0;
    for (long i = 0; i < q; ++i) x = apply_word(pinned, v, x, 1e-12);
    CHECK(x - x0 == doctest::Approx(two_pi * p).epsilon(1e-8));
  }
}

TEST_CASE("commutator approximants converge to the flow of the bracket") {
  // [d/dx, sin x] = cos x: the N-approximant of the time-1 bracket flow
  // approaches the direct time-1 flow of cos x as N grows.
  const TrigPoly v = TrigPoly::sine(1);
  const int n = 256;
  std::vector<double> target(n);
  const TrigPoly w = TrigPoly::cosine(1);
  const TrigPoly wp = derivative(w);
  for (int i = 0; i < n; ++i)
    target[i] =
        detail::autonomous_flow(w, wp, 1.0, two_pi * i / n, 1e-11).first;
  const LiftedMap direct(std::move(target));
  double prev = 1e300;
  for (int N : {4, 8, 16}) {
    const LiftedMap approx = commutator_flow_approx(v, 1.0, N, n, 1e-11);
    const double d = ck_distance(approx, direct, 0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 5e-2);  // O(1/N) rate: ~0.04 at N = 16
}

TEST_CASE("hyperbolic word search succeeds on a two-harmonic field") {
  TrigPoly v = TrigPoly::sine(1);
  v.add_harmonic(2, 0.5, 0.0);
  WordSearchOptions opts;
  opts.restarts = 8;
  const auto res = search_hyperbolic_word(v, 0, 1, opts);
  REQUIRE(res.word.has_value());
  REQUIRE(res.orbit.has_value());
  CHECK(res.word->in_positive_class(1e-9));
  CHECK(std::abs(res.orbit->multiplier - 1.0) > opts.hyperbolicity_threshold);
  // The returned orbit is a genuine fixed point of the word map.
  const double x0 = res.orbit->x0;
  CHECK(wrap_angle(apply_word(*res.word, v, x0, 1e-11)) ==
        doctest::Approx(x0).epsilon(1e-6));
}

TEST_CASE("search is deterministic for a fixed seed") {
  TrigPoly v = TrigPoly::sine(1);
  v.add_harmonic(3, 0.0, 0.4);
  WordSearchOptions opts;
  opts.restarts = 6;
  opts.seed = 42;
  const auto a = search_hyperbolic_word(v, 0, 1, opts);
  const auto b = search_hyperbolic_word(v, 0, 1, opts);
  REQUIRE(a.word.has_value());
  REQUIRE(b.word.has_value());
  CHECK(a.word->shift_times == b.word->shift_times);
  CHECK(a.word->field_times == b.word->field_times);
  CHECK(a.orbit->multiplier == b.orbit->multiplier);
}
