// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_FLOW_HPP
#define TORUSFLOW_FLOW_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "torusflow/integrator.hpp"
#include "torusflow/lifted_map.hpp"
#include "torusflow/ode.hpp"

namespace torusflow {

namespace detail {

/// Replicate the forcing's period breakpoints across [t0, t1], sorted.
inline std::vector<double> breakpoints_in(const Forcing& f, double t0,
                                          double t1) {
  std::vector<double> out;
  auto base = forcing_breakpoints(f);
  if (base.empty() || t1 <= t0) return out;
  const long j0 = static_cast<long>(std::floor(t0 / two_pi)) - 1;
  const long j1 = static_cast<long>(std::ceil(t1 / two_pi)) + 1;
  for (long j = j0; j <= j1; ++j)
    for (double b : base) {
      const double t = b + two_pi * j;
      if (t > t0 && t < t1) out.push_back(t);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Lifted solution x(t1) of dx/dt = v(x) + A + B f(t) with x(t0) = x0.
inline double integrate_lift(const TorusODE& ode, double t0, double t1,
                             double x0, double tol) {
  if (tol <= 0) throw PreconditionError("integrate_lift: tol must be > 0");
  if (t1 < t0) throw PreconditionError("integrate_lift: t1 < t0");
  IntegratorOptions opts{.tol = tol};
  auto bkpts = detail::breakpoints_in(ode.f, t0, t1);
  auto rhs = [&ode](double t, const std::array<double, 1>& y,
                    std::array<double, 1>& dy) { dy[0] = ode.rhs(y[0], t); };
  return rk45_integrate_split<1>(rhs, t0, t1, {x0}, bkpts, opts)[0];
}

/// Period-2*pi flow value and spatial derivative dH/dx at x0, the latter
/// from the variational equation integrated in log form (always positive).
inline std::pair<double, double> flow_map_with_derivative(const TorusODE& ode,
                                                          double x0,
                                                          double tol) {
  if (tol <= 0)
    throw PreconditionError("flow_map_with_derivative: tol must be > 0");
  IntegratorOptions opts{.tol = tol};
  auto bkpts = detail::breakpoints_in(ode.f, 0.0, two_pi);
  const TrigPoly vp = derivative(ode.v);
  auto rhs = [&ode, &vp](double t, const std::array<double, 2>& y,
                         std::array<double, 2>& dy) {
    dy[0] = ode.rhs(y[0], t);
    dy[1] = vp(y[0]);
  };
  auto y = rk45_integrate_split<2>(rhs, 0.0, two_pi, {x0, 0.0}, bkpts, opts);
  return {y[0], std::exp(y[1])};
}

/// Period-2*pi flow map of the family member, sampled on an n-point grid.
/// Rejects non-monotone output (integration tolerance too loose).
inline LiftedMap flow_map(const TorusODE& ode, int n, double tol) {
  if (n < 16) throw PreconditionError("flow_map: grid size must be >= 16");
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i)
    values[i] = integrate_lift(ode, 0.0, two_pi, two_pi * i / n, tol);
  auto shared = std::make_shared<const TorusODE>(ode);
  return LiftedMap(std::move(values), [shared, tol](double x) {
    return flow_map_with_derivative(*shared, x, tol);
  });
}

}  // namespace torusflow

#endif
