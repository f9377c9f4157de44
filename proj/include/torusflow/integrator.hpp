// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_INTEGRATOR_HPP
#define TORUSFLOW_INTEGRATOR_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "torusflow/common.hpp"

namespace torusflow {

struct IntegratorOptions {
  double tol = 1e-10;    // mixed absolute/relative local error target
  double h_min = 1e-13;  // below this the step controller gives up
  double h_init = 0.1;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0,      1.0 / 5,  3.0 / 10, 4.0 / 5,
                                   8.0 / 9,  1.0,      1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_b5[7] = {35.0 / 384,     0.0,  500.0 / 1113,
                                    125.0 / 192,    -2187.0 / 6784,
                                    11.0 / 84,      0.0};
inline constexpr double dp_b4[7] = {5179.0 / 57600,  0.0,
                                    7571.0 / 16695,  393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100,
                                    1.0 / 40};

}  // namespace detail

/// Adaptive Dormand-Prince RK5(4) with PI step control over [t0, t1],
/// t1 >= t0. f(t, y, dydt) fills the derivative.
template <int N, class F>
std::array<double, N> rk45_integrate(F&& f, double t0, double t1,
                                     std::array<double, N> y,
                                     const IntegratorOptions& opts = {}) {
  if (t1 < t0) throw PreconditionError("rk45_integrate: t1 < t0");
  if (t1 == t0) return y;

  using State = std::array<double, N>;
  State k[7], ytmp, y5, y4;
  double t = t0;
  double h = std::min(opts.h_init, t1 - t0);
  double err_prev = 1.0;
  f(t, y, k[0]);  // FSAL seed

  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < opts.h_min)
      throw StepSizeUnderflow("rk45_integrate: step size underflow at t = " +
                              std::to_string(t));
    for (int i = 1; i < 7; ++i) {
      for (int d = 0; d < N; ++d) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j) acc += detail::dp_a[i][j] * k[j][d];
        ytmp[d] = y[d] + h * acc;
      }
      f(t + detail::dp_c[i] * h, ytmp, k[i]);
    }
    double err = 0.0;
    for (int d = 0; d < N; ++d) {
      double acc5 = 0.0, acc4 = 0.0;
      for (int i = 0; i < 7; ++i) {
        acc5 += detail::dp_b5[i] * k[i][d];
        acc4 += detail::dp_b4[i] * k[i][d];
      }
      y5[d] = y[d] + h * acc5;
      y4[d] = y[d] + h * acc4;
      const double sc =
          opts.tol + opts.tol * std::max(std::abs(y[d]), std::abs(y5[d]));
      const double e = (y5[d] - y4[d]) / sc;
      err += e * e;
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err))
      throw NumericsError("rk45_integrate: non-finite state");

    if (err <= 1.0) {
      t += h;
      y = y5;
      k[0] = k[6];  // FSAL
      const double e = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = e;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return y;
}

/// Same, but never steps across any of the given breakpoints (sorted,
/// within (t0, t1)); the right-hand side may lose smoothness there.
template <int N, class F>
std::array<double, N> rk45_integrate_split(F&& f, double t0, double t1,
                                           std::array<double, N> y,
                                           std::span<const double> breakpoints,
                                           const IntegratorOptions& opts = {}) {
  double t = t0;
  for (double b : breakpoints) {
    if (b <= t || b >= t1) continue;
    y = rk45_integrate<N>(f, t, b, y, opts);
    t = b;
  }
  return rk45_integrate<N>(f, t, t1, y, opts);
}

}  // namespace torusflow

#endif
