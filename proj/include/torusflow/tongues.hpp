// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_TONGUES_HPP
#define TORUSFLOW_TONGUES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "torusflow/flow.hpp"
#include "torusflow/ode.hpp"
#include "torusflow/rotation.hpp"
#include "torusflow/trig_poly.hpp"

namespace torusflow {

struct Rational {
  long p = 0;
  long q = 1;
  double value() const { return static_cast<double>(p) / q; }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return a.p * b.q <=> b.p * a.q;
  }
};

inline Rational reduced(long p, long q) {
  if (q <= 0) throw PreconditionError("Rational: q must be positive");
  const long g = std::max(gcd_long(p, q), 1L);
  return {p / g, q / g};
}

/// Intersection of one phase-lock area with a horizontal line B = const:
/// the A-interval where rho(A, B) = p/q, with a hyperbolicity witness from
/// the interval midpoint when one exists.
struct TongueSlice {
  Rational rho;
  double B = 0.0;
  double A_left = 0.0;
  double A_right = 0.0;
  std::optional<PeriodicOrbit> witness;
  std::string status = "ok";  // ok | point | degenerate | inconclusive
  double width() const { return A_right - A_left; }
};

struct ScanOptions {
  double tol_A = 1e-6;
  int grid = 1024;            // flow-map grid for lock classification
  double flow_tol = 1e-9;
  double degenerate_tol = 1e-9;
  bool keep_points = false;   // record zero-width slices in scans
  int max_classify = 200;     // per-slice classification budget
};

enum class LockClass { below, locked, above };

struct LockInfo {
  LockClass cls = LockClass::locked;
  // A sign change of D certifies the lock transversally; a lock seen only
  // as a near-zero plateau of D is indistinguishable from a point
  // intersection at this resolution.
  bool transverse = false;
};

/// Certified one-sided comparison of rho(A, B) against p/q through the
/// sign of D(x) = H^q(x) - x - 2*pi*p on the flow-map grid: all positive
/// means rho > p/q, all negative rho < p/q, a sign change (or a flat
/// near-zero plateau) witnesses rho = p/q.
inline LockInfo classify_lock_info(const TrigPoly& v, const Forcing& f,
                                   Rational rho, double A, double B,
                                   const ScanOptions& opts) {
  const LiftedMap g =
      flow_map(TorusODE{v, A, B, f}, opts.grid, opts.flow_tol);
  const int n = g.grid_size();
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = g.node(i);
  for (long it = 0; it < rho.q; ++it)
    for (int i = 0; i < n; ++i) y[i] = g(y[i]);
  double dmin = 1e300, dmax = -1e300;
  int imin = 0, imax = 0;
  for (int i = 0; i < n; ++i) {
    const double d = y[i] - g.node(i) - two_pi * rho.p;
    if (d < dmin) { dmin = d; imin = i; }
    if (d > dmax) { dmax = d; imax = i; }
  }
  if (dmin > opts.degenerate_tol) return {LockClass::above, false};
  if (dmax < -opts.degenerate_tol) return {LockClass::below, false};
  // Interpolation error compounds over the q-fold iteration and can fake
  // a sign straddle; confirm a grid-level lock with the exact evaluator
  // at the extremal nodes before accepting it.
  if (g.has_exact()) {
    auto exact_D = [&](int i) {
      double x = g.node(i);
      for (long it = 0; it < rho.q; ++it) x = g.exact(x).first;
      return x - g.node(i) - two_pi * rho.p;
    };
    dmin = exact_D(imin);
    dmax = exact_D(imax);
    if (dmin > opts.degenerate_tol) return {LockClass::above, false};
    if (dmax < -opts.degenerate_tol) return {LockClass::below, false};
  }
  return {LockClass::locked,
          dmin < -opts.degenerate_tol && dmax > opts.degenerate_tol};
}

inline LockClass classify_lock(const TrigPoly& v, const Forcing& f,
                               Rational rho, double A, double B,
                               const ScanOptions& opts) {
  return classify_lock_info(v, f, rho, A, B, opts).cls;
}

/// Locate [A_left, A_right] of the rho-slice at height B by monotone
/// bisection between certified below/above parameters and locked
/// witnesses. The bracket must straddle: rho(A_lo) <= p/q <= rho(A_hi).
inline TongueSlice boundary_slice(const TrigPoly& v, const Forcing& f,
                                  Rational rho, double B,
                                  std::pair<double, double> A_bracket,
                                  const ScanOptions& opts) {
  auto [lo, hi] = A_bracket;
  if (lo > hi) throw PreconditionError("boundary_slice: empty bracket");
  int budget = opts.max_classify;
  bool transverse_lock_seen = false;
  auto classify = [&](double A) {
    if (budget-- <= 0) throw NumericsError("boundary_slice: budget exhausted");
    const LockInfo info = classify_lock_info(v, f, rho, A, B, opts);
    if (info.cls == LockClass::locked && info.transverse)
      transverse_lock_seen = true;
    return info.cls;
  };
  TongueSlice slice{rho, B};
  try {
    LockClass c_lo = classify(lo), c_hi = classify(hi);
    if (c_lo == LockClass::above || c_hi == LockClass::below)
      throw PreconditionError("boundary_slice: bracket does not straddle p/q");

    // Find some locked parameter (or conclude a point intersection).
    double a_below = lo, a_above = hi;
    std::optional<double> a_locked;
    if (c_lo == LockClass::locked) a_locked = lo;
    if (c_hi == LockClass::locked) a_locked = hi;
    while (!a_locked && a_above - a_below > opts.tol_A) {
      const double mid = 0.5 * (a_below + a_above);
      switch (classify(mid)) {
        case LockClass::below: a_below = mid; break;
        case LockClass::above: a_above = mid; break;
        case LockClass::locked: a_locked = mid; break;
      }
    }
    if (!a_locked) {
      const double mid = 0.5 * (a_below + a_above);
      slice.A_left = slice.A_right = mid;
      slice.status = "point";
      return slice;
    }

    // Left edge: bisect below-certified vs locked.
    if (c_lo == LockClass::locked) {
      slice.A_left = lo;
    } else {
      double l = a_below, r = *a_locked;
      while (r - l > opts.tol_A) {
        const double mid = 0.5 * (l + r);
        if (classify(mid) == LockClass::below)
          l = mid;
        else
          r = mid;  // above cannot occur between below and locked
      }
      slice.A_left = 0.5 * (l + r);
    }
    // Right edge: locked vs above-certified.
    if (c_hi == LockClass::locked) {
      slice.A_right = hi;
    } else {
      double l = *a_locked, r = a_above;
      while (r - l > opts.tol_A) {
        const double mid = 0.5 * (l + r);
        if (classify(mid) == LockClass::above)
          r = mid;
        else
          l = mid;
      }
      slice.A_right = 0.5 * (l + r);
    }

    const double a_mid = 0.5 * (slice.A_left + slice.A_right);
    // A lock never witnessed by a sign change of D is a grazing contact:
    // the measured extent is a resolution artifact, so report a point.
    if (!transverse_lock_seen) classify(a_mid);  // may set the flag
    if (!transverse_lock_seen) {
      slice.A_left = slice.A_right = a_mid;
      slice.status = "point";
      return slice;
    }
    const LiftedMap g =
        flow_map(TorusODE{v, a_mid, B, f}, opts.grid, opts.flow_tol);
    auto orbit = find_periodic_orbit(g, rho.p, rho.q, opts.degenerate_tol);
    if (orbit.status == OrbitStatus::degenerate) slice.status = "degenerate";
    slice.witness = orbit.orbit;
  } catch (const NumericsError&) {
    slice.status = "inconclusive";
  }
  return slice;
}

struct TongueDiagram {
  std::string description;
  std::vector<double> B_values;
  std::vector<TongueSlice> slices;  // sorted by B, then rho
};

/// Sweep: for each B, bound the attained rho-range from the bracket
/// endpoints, enumerate reduced rationals with q <= qmax inside it, and
/// attempt a boundary slice for each. Failures are recorded per slice,
/// never aborting the scan.
inline TongueDiagram scan_diagram(const TrigPoly& v, const Forcing& f,
                                  std::pair<double, double> A_range,
                                  const std::vector<double>& B_values,
                                  int qmax, const ScanOptions& opts) {
  TongueDiagram diagram;
  diagram.B_values = B_values;
  std::vector<double> Bs = B_values;
  std::sort(Bs.begin(), Bs.end());
  for (double B : Bs) {
    if (A_range.second <= A_range.first) continue;
    const RotationEstimate lo_est = rotation_number_ode(
        TorusODE{v, A_range.first, B, f}, 96, opts.flow_tol);
    const RotationEstimate hi_est = rotation_number_ode(
        TorusODE{v, A_range.second, B, f}, 96, opts.flow_tol);
    const double rho_lo = lo_est.value - lo_est.error_bound;
    const double rho_hi = hi_est.value + hi_est.error_bound;
    std::vector<Rational> targets;
    for (long q = 1; q <= qmax; ++q)
      for (long p = static_cast<long>(std::ceil(rho_lo * q));
           p <= static_cast<long>(std::floor(rho_hi * q)); ++p)
        if (gcd_long(p, q) == 1) targets.push_back({p, q});
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (const Rational& rho : targets) {
      TongueSlice s;
      try {
        s = boundary_slice(v, f, rho, B, A_range, opts);
      } catch (const PreconditionError&) {
        continue;  // rho not attained on this line after all
      }
      if (s.status == "inconclusive" || opts.keep_points ||
          s.width() > 2 * opts.tol_A)
        diagram.slices.push_back(std::move(s));
    }
  }
  return diagram;
}

struct QuantizationReport {
  bool applicable = false;        // field is of special form
  std::optional<int> m;           // absent for pure-constant fields
  bool pass = false;
  std::vector<TongueSlice> violations;  // wide slices off the (1/m) grid
  TongueDiagram diagram;
};

/// Check of the quantization effect: for special-form fields every slice
/// wider than width_floor must sit at a multiple of 1/m. Vacuous (reported
/// as such) for non-special fields.
inline QuantizationReport quantization_check(
    const TrigPoly& v, const Forcing& f, std::pair<double, double> A_range,
    const std::vector<double>& B_values, int qmax, const ScanOptions& opts,
    double width_floor = 1e-3) {
  QuantizationReport report;
  const SpecialFormResult form = is_special_form(v);
  report.applicable = form.special;
  report.m = form.m;
  if (!form.special) return report;
  report.diagram = scan_diagram(v, f, A_range, B_values, qmax, opts);
  report.pass = true;
  const long m = form.m.value_or(1);  // constant fields: plain integers
  for (const TongueSlice& s : report.diagram.slices) {
    if (s.width() <= width_floor || s.status == "inconclusive") continue;
    if (m % s.rho.q != 0) {  // p/q = k/m for integer k iff q divides m
      report.pass = false;
      report.violations.push_back(s);
    }
  }
  return report;
}

/// Periodic orbit at (A0, B0) with multiplier bounded away from 1,
/// certifying an interior point of the rho-level set.
inline std::optional<PeriodicOrbit> interior_witness(
    const TrigPoly& v, const Forcing& f, Rational rho, double A0, double B0,
    double tol, const ScanOptions& opts = {}) {
  const LiftedMap g =
      flow_map(TorusODE{v, A0, B0, f}, opts.grid, opts.flow_tol);
  auto res = find_periodic_orbit(g, rho.p, rho.q, opts.degenerate_tol);
  if (res.status != OrbitStatus::found) return std::nullopt;
  if (std::abs(res.orbit->multiplier - 1.0) <= tol) return std::nullopt;
  return res.orbit;
}

}  // namespace torusflow

#endif
