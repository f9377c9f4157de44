// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_WORD_FLOW_HPP
#define TORUSFLOW_WORD_FLOW_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "torusflow/flow.hpp"
#include "torusflow/group_word.hpp"
#include "torusflow/lifted_map.hpp"
#include "torusflow/rotation.hpp"
#include "torusflow/trig_poly.hpp"

namespace torusflow {

namespace detail {

/// Time-tau flow of the autonomous field v with its spatial derivative,
/// via the variational equation in log form. Negative tau integrates the
/// reversed field.
inline std::pair<double, double> autonomous_flow(const TrigPoly& v,
                                                 const TrigPoly& vp,
                                                 double tau, double x,
                                                 double tol) {
  if (tau == 0.0) return {x, 1.0};
  const double sign = tau > 0 ? 1.0 : -1.0;
  IntegratorOptions opts{.tol = tol};
  auto rhs = [&](double, const std::array<double, 2>& y,
                 std::array<double, 2>& dy) {
    dy[0] = sign * v(y[0]);
    dy[1] = sign * vp(y[0]);
  };
  auto y = rk45_integrate<2>(rhs, 0.0, std::abs(tau), {x, 0.0}, opts);
  return {y[0], std::exp(y[1])};
}

}  // namespace detail

/// Apply the word's product of flows to a single lifted point; rightmost
/// factor first.
inline std::pair<double, double> apply_word_with_derivative(
    const GroupWord& w, const TrigPoly& v, const TrigPoly& vp, double x,
    double tol) {
  double deriv = 1.0;
  for (int j = w.length() - 1; j >= 0; --j) {
    const auto [y, dy] =
        detail::autonomous_flow(v, vp, w.field_times[j], x, tol);
    x = y + w.shift_times[j];
    deriv *= dy;
  }
  return {x, deriv};
}

inline double apply_word(const GroupWord& w, const TrigPoly& v, double x,
                         double tol) {
  const TrigPoly vp = derivative(v);
  return apply_word_with_derivative(w, v, vp, x, tol).first;
}

/// The word's circle map as a LiftedMap on an n-point grid, carrying an
/// exact point evaluator.
inline LiftedMap eval_word(const GroupWord& w, const TrigPoly& v, int n,
                           double tol) {
  const TrigPoly vp = derivative(v);
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i)
    values[i] =
        apply_word_with_derivative(w, v, vp, two_pi * i / n, tol).first;
  auto wp = std::make_shared<const GroupWord>(w);
  auto vs = std::make_shared<const TrigPoly>(v);
  auto vps = std::make_shared<const TrigPoly>(vp);
  return LiftedMap(std::move(values), [wp, vs, vps, tol](double x) {
    return apply_word_with_derivative(*wp, *vs, *vps, x, tol);
  });
}

/// (g^{t/N}_v o g^{1/N}_{d/dx} o g^{-t/N}_v o g^{-1/N}_{d/dx})^{N^2}:
/// the commutator-flow approximant of the time-t flow of v' = [d/dx, v].
/// The group commutator of diffeomorphisms realizes the *negative* of the
/// vector-field bracket, so the field flow must come first to land on
/// [d/dx, v] rather than [v, d/dx]. The inner word is evaluated once on
/// the grid and raised to the N^2 power by binary composition.
inline LiftedMap commutator_flow_approx(const TrigPoly& v, double t, int N,
                                        int n, double tol) {
  if (N < 1) throw PreconditionError("commutator_flow_approx: N < 1");
  const GroupWord base({0.0, 1.0 / N, -1.0 / N}, {t / N, -t / N, 0.0});
  LiftedMap g = eval_word(base, v, n, tol);
  return map_power(g, N * N);
}

/// Replace t_1 by the root T of g(T, t_2, ..)^q(x0) = x0 + 2*pi*p. The
/// displacement is strictly increasing in T and gains exactly 2*pi*q per
/// 2*pi of T, so a root always exists; the initial bracket around the
/// current t_1 is widened in 2*pi steps as needed.
inline GroupWord pin_word_parameter(const GroupWord& w, const TrigPoly& v,
                                    double x0, long p, long q,
                                    double tol = 1e-11) {
  if (q < 1) throw PreconditionError("pin_word_parameter: q < 1");
  const TrigPoly vp = derivative(v);
  auto displacement = [&](double T) {
    GroupWord wt = w;
    wt.shift_times[0] = T;
    double x = x0;
    for (long i = 0; i < q; ++i)
      x = apply_word_with_derivative(wt, v, vp, x, tol).first;
    return x - x0 - two_pi * p;
  };
  double lo = w.shift_times[0] - std::numbers::pi;
  double hi = w.shift_times[0] + std::numbers::pi;
  double dlo = displacement(lo), dhi = displacement(hi);
  if (dlo > 0) {
    const double k = std::ceil(dlo / (two_pi * q));
    lo -= two_pi * k;
    dlo = displacement(lo);
  }
  if (dhi < 0) {
    const double k = std::ceil(-dhi / (two_pi * q));
    hi += two_pi * k;
    dhi = displacement(hi);
  }
  if (dlo > 0 || dhi < 0)
    throw NumericsError("pin_word_parameter: failed to bracket the root");
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double dm = displacement(mid);
    if (dm <= 0)
      lo = mid;
    else
      hi = mid;
  }
  GroupWord out = w;
  out.shift_times[0] = 0.5 * (lo + hi);
  return out;
}

struct WordSearchOptions {
  int word_length = 2;
  int restarts = 24;
  int nm_iterations = 90;
  double tau_min = 0.05;            // keeps words strictly inside G^1_+
  double hyperbolicity_threshold = 1e-2;  // accepted |multiplier - 1|
  double tol = 1e-8;
  double verify_tol = 1e-9;
  uint64_t seed = 1;
};

struct WordSearchResult {
  std::optional<GroupWord> word;    // in G^1_+, t_1 pinned
  std::optional<PeriodicOrbit> orbit;
  int restarts_used = 0;
};

namespace detail {

/// Plain Nelder-Mead on R^dim; f is minimized. Returns best point found.
inline std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, double step, int max_iter,
    const std::function<bool(double)>& good_enough) {
  const int dim = static_cast<int>(x0.size());
  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  for (int i = 1; i <= dim; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= dim; ++i) fv[i] = f(pts[i]);
  for (int iter = 0; iter < max_iter; ++iter) {
    int lo = 0, hi = 0;
    for (int i = 1; i <= dim; ++i) {
      if (fv[i] < fv[lo]) lo = i;
      if (fv[i] > fv[hi]) hi = i;
    }
    int hi2 = (hi == 0) ? 1 : 0;
    for (int i = 0; i <= dim; ++i)
      if (i != hi && fv[i] > fv[hi2]) hi2 = i;
    if (good_enough && good_enough(fv[lo])) break;
    std::vector<double> centroid(dim, 0.0);
    for (int i = 0; i <= dim; ++i)
      if (i != hi)
        for (int d = 0; d < dim; ++d) centroid[d] += pts[i][d] / dim;
    auto blend = [&](double alpha) {
      std::vector<double> p(dim);
      for (int d = 0; d < dim; ++d)
        p[d] = centroid[d] + alpha * (pts[hi][d] - centroid[d]);
      return p;
    };
    auto refl = blend(-1.0);
    const double fr = f(refl);
    if (fr < fv[lo]) {
      auto exp_ = blend(-2.0);
      const double fe = f(exp_);
      if (fe < fr) {
        pts[hi] = exp_;
        fv[hi] = fe;
      } else {
        pts[hi] = refl;
        fv[hi] = fr;
      }
    } else if (fr < fv[hi2]) {
      pts[hi] = refl;
      fv[hi] = fr;
    } else {
      auto con = blend(0.5);
      const double fc = f(con);
      if (fc < fv[hi]) {
        pts[hi] = con;
        fv[hi] = fc;
      } else {
        for (int i = 0; i <= dim; ++i) {
          if (i == lo) continue;
          for (int d = 0; d < dim; ++d)
            pts[i][d] = 0.5 * (pts[i][d] + pts[lo][d]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  int lo = 0;
  for (int i = 1; i <= dim; ++i)
    if (fv[i] < fv[lo]) lo = i;
  return pts[lo];
}

/// Map unconstrained parameters to a word on the simplex
/// { tau_j >= tau_min, sum tau_j = 2*pi } via softmax; shift times t_2..t_k
/// are taken as-is, t_1 is a placeholder until pinned.
inline GroupWord theta_to_word(const std::vector<double>& theta, int k,
                               double tau_min) {
  std::vector<double> t(k, 0.0), tau(k);
  for (int j = 1; j < k; ++j) t[j] = theta[j - 1];
  double zmax = 0.0;
  for (int j = 0; j < k - 1; ++j) zmax = std::max(zmax, theta[k - 1 + j]);
  double sum = std::exp(0.0 - zmax);  // z_k fixed at 0
  std::vector<double> e(k);
  e[k - 1] = sum;
  for (int j = 0; j < k - 1; ++j) {
    e[j] = std::exp(theta[k - 1 + j] - zmax);
    sum += e[j];
  }
  const double free_mass = two_pi - k * tau_min;
  for (int j = 0; j < k; ++j) tau[j] = tau_min + free_mass * e[j] / sum;
  return GroupWord(std::move(t), std::move(tau));
}

}  // namespace detail

/// Seeded derivative-free search for a positive-class word with rotation
/// number p/q and a hyperbolic q-periodic orbit. Per restart: random
/// (t_2..t_k, tau_1..tau_k) on the constrained simplex, t_1 pinned so a
/// scanned base point is (p,q)-periodic, Nelder-Mead maximizing
/// |log multiplier| of that orbit, then independent re-verification at a
/// tighter tolerance. Absence after the restart budget is the (expected)
/// outcome for special-form fields.
inline WordSearchResult search_hyperbolic_word(const TrigPoly& v, long p,
                                               long q,
                                               const WordSearchOptions& opts) {
  if (opts.word_length < 2)
    throw PreconditionError("search_hyperbolic_word: word length must be >= 2");
  if (q < 1 || gcd_long(p, q) != 1)
    throw PreconditionError("search_hyperbolic_word: need gcd(p,q) = 1");
  const int k = opts.word_length;
  const int dim = 2 * k - 2;
  const TrigPoly vp = derivative(v);
  const double base_points[2] = {0.0, std::numbers::pi};

  struct Candidate {
    double score = -1e300;
    GroupWord word{{0.0, 0.0}, {1.0, 1.0}};
    double x0 = 0.0;
    double multiplier = 1.0;
  };

  auto orbit_multiplier = [&](const GroupWord& w, double x0, double tol) {
    double mult = 1.0, x = x0;
    for (long i = 0; i < q; ++i) {
      const auto [y, dy] = apply_word_with_derivative(w, v, vp, x, tol);
      mult *= dy;
      x = y;
    }
    return mult;
  };

  auto evaluate = [&](const std::vector<double>& theta, Candidate& best) {
    GroupWord w = detail::theta_to_word(theta, k, opts.tau_min);
    double score = -1e300;
    for (double x0 : base_points) {
      GroupWord pinned;
      try {
        pinned = pin_word_parameter(w, v, x0, p, q, opts.tol);
      } catch (const NumericsError&) {
        continue;
      }
      const double mult = orbit_multiplier(pinned, x0, opts.tol);
      const double s = std::abs(std::log(mult));
      if (s > score) score = s;
      if (s > best.score) best = {s, pinned, x0, mult};
    }
    return -score;  // minimized
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ut(-std::numbers::pi,
                                            std::numbers::pi);
  std::uniform_real_distribution<double> uz(-1.5, 1.5);
  const double accept = std::log1p(opts.hyperbolicity_threshold);

  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<double> theta(dim);
    for (int j = 0; j < k - 1; ++j) theta[j] = ut(rng);
    for (int j = 0; j < k - 1; ++j) theta[k - 1 + j] = uz(rng);
    Candidate best;
    auto f = [&](const std::vector<double>& th) { return evaluate(th, best); };
    detail::nelder_mead(f, theta, 0.5, opts.nm_iterations,
                        [&](double fbest) { return -fbest > 4.0 * accept; });
    if (best.score <= accept) continue;
    // Independent verification at tighter tolerance.
    GroupWord pinned;
    try {
      pinned = pin_word_parameter(best.word, v, best.x0, p, q,
                                  opts.verify_tol);
    } catch (const NumericsError&) {
      continue;
    }
    const double mult = orbit_multiplier(pinned, best.x0, opts.verify_tol);
    if (std::abs(mult - 1.0) <= opts.hyperbolicity_threshold) continue;
    if (std::abs(mult - best.multiplier) > 0.1 * std::abs(best.multiplier))
      continue;
    return {pinned, PeriodicOrbit{p, q, wrap_angle(best.x0), mult}, r + 1};
  }
  return {std::nullopt, std::nullopt, opts.restarts};
}

}  // namespace torusflow

#endif
