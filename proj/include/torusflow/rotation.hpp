// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_ROTATION_HPP
#define TORUSFLOW_ROTATION_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "torusflow/flow.hpp"
#include "torusflow/lifted_map.hpp"
#include "torusflow/ode.hpp"

namespace torusflow {

struct RotationEstimate {
  double value;        // best point estimate, guaranteed inside the enclosure
  double error_bound;  // half... full enclosure width; |value - rho| <= bound
  int iterations;
};

struct PeriodicOrbit {
  long p;
  long q;            // gcd(p, q) = 1, q >= 1
  double x0;         // in [0, 2*pi)
  double multiplier; // (H^q)'(x0) > 0
};

enum class OrbitStatus { found, none, degenerate };

struct OrbitSearchResult {
  OrbitStatus status = OrbitStatus::none;
  std::optional<PeriodicOrbit> orbit;
};

namespace detail {

/// Exponential bump weights of weighted Birkhoff averaging; smooths the
/// boundary terms away so the average converges far faster than 1/n for
/// Diophantine rotation numbers.
inline double birkhoff_weight(double s) {
  return (s > 0 && s < 1) ? std::exp(-1.0 / (s * (1.0 - s))) : 0.0;
}

inline double weighted_birkhoff(const std::vector<double>& displacements) {
  const int n = static_cast<int>(displacements.size());
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = birkhoff_weight((i + 0.5) / n);
    num += w * displacements[i];
    den += w;
  }
  return num / (den * two_pi);
}

}  // namespace detail

/// Rotation number of a lifted circle map with a certified enclosure.
///
/// Uses the classical displacement bound: for every x and n,
/// |H^n(x) - x - 2*pi*n*rho| < 2*pi, so sampling H^n(x_j) - x_j over a set
/// of points and intersecting the enclosures over n gives a rigorous
/// interval of width <= 2/n. The reported value refines the midpoint with
/// a weighted Birkhoff average of one orbit's displacements, clamped into
/// the enclosure. Stops early once the enclosure is narrower than tol.
inline RotationEstimate rotation_number_map(const LiftedMap& g, int nmax,
                                            double tol = 1e-12) {
  if (nmax < 8) throw PreconditionError("rotation_number_map: nmax < 8");
  const int n = g.grid_size();
  const int m = std::min(64, n);
  const int stride = n / m;
  std::vector<double> y(m), y0(m);
  for (int j = 0; j < m; ++j) y0[j] = y[j] = g.node(j * stride);
  std::vector<double> orbit0{y[0]};
  double lo = -1e300, hi = 1e300;
  int used = 0;
  for (int i = 1; i <= nmax; ++i) {
    double dmin = 1e300, dmax = -1e300;
    for (int j = 0; j < m; ++j) {
      y[j] = g(y[j]);
      const double d = y[j] - y0[j];
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    orbit0.push_back(y[0]);
    lo = std::max(lo, (dmax - two_pi) / (two_pi * i));
    hi = std::min(hi, (dmin + two_pi) / (two_pi * i));
    used = i;
    if (hi - lo < tol) break;
  }
  if (lo > hi) {  // interpolation noise; fall back to a safe interval
    const double mid = 0.5 * (lo + hi);
    lo = mid - 1e-12;
    hi = mid + 1e-12;
  }
  std::vector<double> disp(orbit0.size() - 1);
  for (size_t i = 0; i + 1 < orbit0.size(); ++i)
    disp[i] = orbit0[i + 1] - orbit0[i];
  const double value =
      std::clamp(detail::weighted_birkhoff(disp), lo, hi);
  return {value, std::max(hi - lo, 1e-15), used};
}

/// Rotation number of the flow of the equation: one trajectory over
/// `periods` periods, weighted-Birkhoff averaged per-period displacements.
/// With the artifact's fixed lift (start at t = 0, H(0) free in R) this is
/// literally equal to the flow map's rotation number, not just mod 1.
inline RotationEstimate rotation_number_ode(const TorusODE& ode, int periods,
                                            double tol) {
  if (periods < 1) throw PreconditionError("rotation_number_ode: periods < 1");
  std::vector<double> x(periods + 1);
  x[0] = 0.0;
  for (int i = 0; i < periods; ++i)
    x[i + 1] = integrate_lift(ode, two_pi * i, two_pi * (i + 1), x[i], tol);
  const double crude = (x[periods] - x[0]) / (two_pi * periods);
  const double bound = 1.0 / periods + 1e3 * tol;
  std::vector<double> disp(periods);
  for (int i = 0; i < periods; ++i) disp[i] = x[i + 1] - x[i];
  const double value = std::clamp(detail::weighted_birkhoff(disp),
                                  crude - bound, crude + bound);
  return {value, bound, periods};
}

/// The unique rational p/q with q <= qmax inside the estimate's error
/// interval, when exactly one exists.
inline std::optional<std::pair<long, long>> detect_rational(
    const RotationEstimate& est, int qmax) {
  if (qmax < 1) throw PreconditionError("detect_rational: qmax < 1");
  std::optional<std::pair<long, long>> found;
  for (long q = 1; q <= qmax; ++q) {
    const long p = std::lround(est.value * q);
    if (gcd_long(p, q) != 1) continue;
    if (std::abs(est.value - static_cast<double>(p) / q) <= est.error_bound) {
      if (found && *found != std::make_pair(p, q)) return std::nullopt;
      found = {p, q};
    }
  }
  return found;
}

namespace detail {

inline double iterate_exact(const LiftedMap& g, double x, int q) {
  for (int i = 0; i < q; ++i) x = g.has_exact() ? g.exact(x).first : g(x);
  return x;
}

}  // namespace detail

/// Root of D(x) = H^q(x) - x - 2*pi*p: grid sign-change scan, then
/// bisection. Among all sign-change roots returns the one with multiplier
/// farthest from 1 (in log). Reports `degenerate` when |D| < tol on the
/// whole grid (rigid-rotation case) and `none` without a sign change.
inline OrbitSearchResult find_periodic_orbit(const LiftedMap& g, long p,
                                             long q, double tol) {
  if (q < 1 || gcd_long(p, q) != 1)
    throw PreconditionError("find_periodic_orbit: need q >= 1, gcd(p,q) = 1");
  const int n = g.grid_size();
  std::vector<double> d(n);
  {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = g.node(i);
    for (long it = 0; it < q; ++it)
      for (int i = 0; i < n; ++i) y[i] = g(y[i]);
    for (int i = 0; i < n; ++i) y[i] -= g.node(i) + two_pi * p;
    d = std::move(y);
  }
  double dmax = 0.0;
  for (double di : d) dmax = std::max(dmax, std::abs(di));
  if (dmax < tol) return {OrbitStatus::degenerate, std::nullopt};

  auto D = [&](double x) {
    return detail::iterate_exact(g, x, static_cast<int>(q)) - x - two_pi * p;
  };
  auto orbit_multiplier = [&](double x) {
    double mult = 1.0;
    for (long it = 0; it < q; ++it) {
      if (g.has_exact()) {
        const auto [y, dy] = g.exact(x);
        mult *= dy;
        x = y;
      } else {
        const auto [y, dy] = g.eval(x);
        mult *= dy;
        x = y;
      }
    }
    return mult;
  };

  std::optional<PeriodicOrbit> best;
  for (int i = 0; i < n; ++i) {
    const double da = d[i], db = d[(i + 1) % n];
    if (da == 0.0 || da * db > 0) continue;
    double a = g.node(i), b = g.node(i) + two_pi / n;
    double fa = D(a), fb = D(b);
    if (fa * fb > 0) continue;  // grid pass and exact evaluator disagree
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = D(mid);
      if (fa * fm <= 0) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    }
    const double x0 = wrap_angle(0.5 * (a + b));
    const double mult = orbit_multiplier(0.5 * (a + b));
    if (!best ||
        std::abs(std::log(mult)) > std::abs(std::log(best->multiplier)))
      best = PeriodicOrbit{p, q, x0, mult};
  }
  if (!best) return {OrbitStatus::none, std::nullopt};
  return {OrbitStatus::found, best};
}

}  // namespace torusflow

#endif
