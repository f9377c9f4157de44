// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_SYNTHESIS_HPP
#define TORUSFLOW_SYNTHESIS_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torusflow/step_forcing.hpp"
#include "torusflow/tongues.hpp"
#include "torusflow/word_flow.hpp"

namespace torusflow {

struct DeltaLimitReport {
  std::vector<double> deltas;
  std::vector<double> c0;  // C0 distance equation flow map vs word map
  std::vector<double> c1;
  bool decreasing = false;  // C0 ladder strictly decreasing
};

/// Distance ladder between the flow of dx/dt = v(x) + phi_delta(t) and the
/// word's map, over a decreasing list of deltas.
inline DeltaLimitReport verify_delta_limit(const GroupWord& w,
                                           const TrigPoly& v,
                                           const std::vector<double>& deltas,
                                           int n, double tol) {
  DeltaLimitReport report;
  const LiftedMap target = eval_word(w, v, n, tol);
  for (double delta : deltas) {
    const StepForcing phi(w, delta);
    const LiftedMap g = flow_map(TorusODE{v, 0.0, 1.0, phi}, n, tol);
    report.deltas.push_back(delta);
    report.c0.push_back(ck_distance(g, target, 0));
    report.c1.push_back(ck_distance(g, target, 1));
  }
  report.decreasing = true;
  for (size_t i = 0; i + 1 < report.c0.size(); ++i)
    if (report.c0[i + 1] >= report.c0[i]) report.decreasing = false;
  return report;
}

struct CorrectOptions {
  double sigma_max = std::numbers::pi;  // adopted cap on |sigma|
  int grid = 192;
  double flow_tol = 1e-9;
  double sigma_tol = 1e-12;
};

struct CorrectedForcing {
  StepForcing forcing;
  long shift_periods;  // the 2*pi*n part added to t_1
  double sigma;
};

/// Adjust t_1 by 2*pi*n + sigma so the equation dx/dt = v + phi_delta
/// locks at the target rational alpha = p/q: n is the integer offset from
/// the word's own rotation number, sigma a small root-found correction
/// (the equation's rotation number is nondecreasing in sigma).
inline CorrectedForcing correct_rotation(const GroupWord& w, const TrigPoly& v,
                                         long alpha_p, long alpha_q,
                                         double delta,
                                         const CorrectOptions& opts = {}) {
  const Rational alpha = reduced(alpha_p, alpha_q);
  const LiftedMap word_map = eval_word(w, v, 256, opts.flow_tol);
  const RotationEstimate rho_w = rotation_number_map(word_map, 1024);
  const double offset = alpha.value() - rho_w.value;
  const double n_real = std::round(offset);
  if (std::abs(offset - n_real) > rho_w.error_bound + 1e-6)
    throw PreconditionError(
        "correct_rotation: target is not an integer offset of the word's "
        "rotation number");
  const long n = static_cast<long>(n_real);

  GroupWord shifted = w;
  shifted.shift_times[0] += two_pi * n;

  ScanOptions sopts;
  sopts.grid = opts.grid;
  sopts.flow_tol = opts.flow_tol;
  auto classify = [&](double sigma) {
    GroupWord ws = shifted;
    ws.shift_times[0] += sigma;
    return classify_lock(v, StepForcing(ws, delta), alpha, 0.0, 1.0, sopts);
  };
  auto build = [&](double sigma) {
    GroupWord ws = shifted;
    ws.shift_times[0] += sigma;
    return CorrectedForcing{StepForcing(ws, delta), n, sigma};
  };

  const LockClass c0 = classify(0.0);
  if (c0 == LockClass::locked) return build(0.0);
  // rho is nondecreasing in sigma: expand a bracket in the right direction.
  const double dir = (c0 == LockClass::below) ? 1.0 : -1.0;
  double lo = 0.0, hi = 0.0;
  double step = 1e-3;
  LockClass c_far = c0;
  while (std::abs(hi) < opts.sigma_max) {
    hi = dir * std::min(std::abs(hi) + step, opts.sigma_max);
    step *= 2.0;
    c_far = classify(hi);
    if (c_far == LockClass::locked) return build(hi);
    if (c_far != c0) break;
  }
  if (c_far == c0)
    throw NumericsError(
        "correct_rotation: no lock within |sigma| <= sigma_max; decrease "
        "delta");
  while (std::abs(hi - lo) > opts.sigma_tol) {
    const double mid = 0.5 * (lo + hi);
    const LockClass cm = classify(mid);
    if (cm == LockClass::locked) return build(mid);
    if (cm == c0)
      lo = mid;
    else
      hi = mid;
  }
  throw NumericsError(
      "correct_rotation: lock plateau narrower than sigma_tol; decrease "
      "delta");
}

struct SynthesisOptions {
  uint64_t seed = 1;
  int word_length = 2;
  int search_restarts = 24;
  int nm_iterations = 90;
  double tol = 1e-9;
  int grid = 256;
  double hyperbolicity_threshold = 1e-2;
  int max_delta_halvings = 6;
  int max_degree = 4096;
  double sigma_max = std::numbers::pi;
};

struct SynthesisReport {
  bool success = false;
  std::string stage = "start";  // last stage reached
  std::string diagnostics;
  long p = 0, q = 1;
  int quotient_m = 1;            // harmonic gcd divided out of v
  long lifted_p = 0, lifted_q = 1;  // target mapped back: rho / m
  GroupWord word{{0.0}, {two_pi}};
  double word_multiplier = 1.0;
  double delta = 0.0;
  double sigma = 0.0;
  int degree = 0;
  double multiplier = 1.0;  // witness multiplier of the final forcing
  double witness_x0 = 0.0;
  double margin = 0.0;      // |word multiplier - 1|
};

/// End-to-end synthesis of a trigonometric-polynomial forcing whose family
/// dx/dt = v_q(x) + A + B f(t) has, at (A,B) = (0,1), a phase-lock area at
/// the requested rational. Pipeline: quotient normalization, hyperbolic
/// word search, step-forcing construction with adaptive delta, rotation
/// correction, Fourier truncation with doubling degree, interior
/// certification. Any stage failure returns a partial report.
inline std::pair<std::optional<TrigPoly>, SynthesisReport> synthesize_forcing(
    const TrigPoly& v, long p, long q, const SynthesisOptions& opts = {}) {
  SynthesisReport rep;
  const Rational target = reduced(p, q);
  rep.p = target.p;
  rep.q = target.q;
  auto fail = [&](const std::string& stage, const std::string& why) {
    rep.stage = stage;
    rep.diagnostics = why;
    return std::make_pair(std::optional<TrigPoly>{}, rep);
  };

  // (i) quotient normalization + special-form gate.
  rep.stage = "quotient";
  TrigPoly vq = v;
  if (auto m = harmonic_gcd(v); m && *m > 1) {
    vq = quotient_field(v, *m);
    rep.quotient_m = *m;
  }
  rep.lifted_p = target.p;
  rep.lifted_q = target.q * rep.quotient_m;
  const long lg = gcd_long(rep.lifted_p, rep.lifted_q);
  if (lg > 1) {
    rep.lifted_p /= lg;
    rep.lifted_q /= lg;
  }
  if (is_special_form(vq).special)
    return fail("special-form-gate",
                "field is of special form; quantization obstructs synthesis "
                "at generic rationals");

  // (ii) hyperbolic word search.
  rep.stage = "word-search";
  WordSearchOptions wopts;
  wopts.word_length = opts.word_length;
  wopts.restarts = opts.search_restarts;
  wopts.nm_iterations = opts.nm_iterations;
  wopts.hyperbolicity_threshold = opts.hyperbolicity_threshold;
  wopts.seed = opts.seed;
  auto found = search_hyperbolic_word(vq, target.p, target.q, wopts);
  if (!found.word)
    return fail("word-search", "no hyperbolic word within the restart budget");
  rep.word = *found.word;
  rep.word_multiplier = found.orbit->multiplier;
  rep.margin = std::abs(found.orbit->multiplier - 1.0);

  // (iii)+(iv) delta selection and rotation correction.
  rep.stage = "delta-selection";
  CorrectOptions copts;
  copts.grid = opts.grid;
  copts.flow_tol = opts.tol;
  copts.sigma_max = opts.sigma_max;
  std::optional<CorrectedForcing> corrected;
  double delta = rep.word.min_field_time() / 8.0;
  for (int h = 0; h <= opts.max_delta_halvings; ++h, delta *= 0.5) {
    // The word-map distance shrinks with delta, but the decisive test is
    // the lock certificate below; accept the largest delta that passes it.
    rep.stage = "rotation-correction";
    try {
      corrected = correct_rotation(rep.word, vq, target.p, target.q, delta,
                                   copts);
    } catch (const NumericsError&) {
      continue;  // plateau missed at this delta; halve further
    }
    // Demand a healthy witness before accepting this delta.
    const LiftedMap gc = flow_map(
        TorusODE{vq, 0.0, 1.0, corrected->forcing}, opts.grid, opts.tol);
    auto orbit = find_periodic_orbit(gc, target.p, target.q, 1e-10);
    if (orbit.status == OrbitStatus::found &&
        std::abs(orbit.orbit->multiplier - 1.0) > 0.5 * rep.margin)
      break;
    corrected.reset();
  }
  if (!corrected)
    return fail(rep.stage, "no admissible delta produced a certified lock");
  rep.delta = corrected->forcing.delta();
  rep.sigma = corrected->sigma;

  // (v) Fourier truncation with doubling degree.
  rep.stage = "fourier-truncation";
  const StepForcing& phi = corrected->forcing;
  std::optional<TrigPoly> f;
  for (int N = static_cast<int>(std::ceil(8.0 / rep.delta));
       N <= opts.max_degree; N *= 2) {
    const int nsamp = 8 * N + 8;
    std::vector<double> samples(nsamp);
    for (int j = 0; j < nsamp; ++j) samples[j] = phi(two_pi * j / nsamp);
    TrigPoly fN = truncate_fourier(samples, N);
    const LiftedMap g =
        flow_map(TorusODE{vq, 0.0, 1.0, fN}, opts.grid, opts.tol);
    ScanOptions sopts;
    sopts.grid = opts.grid;
    sopts.flow_tol = opts.tol;
    if (classify_lock(vq, fN, target, 0.0, 1.0, sopts) != LockClass::locked)
      continue;
    auto orbit = find_periodic_orbit(g, target.p, target.q, 1e-10);
    if (orbit.status != OrbitStatus::found ||
        std::abs(orbit.orbit->multiplier - 1.0) <=
            opts.hyperbolicity_threshold)
      continue;
    f = std::move(fN);
    rep.degree = N;
    break;
  }
  if (!f)
    return fail("fourier-truncation",
                "no degree up to the cap preserved the lock and witness");

  // (vi) interior certification, self-checked at tol/10.
  rep.stage = "certification";
  ScanOptions cert;
  cert.grid = opts.grid;
  cert.flow_tol = opts.tol;
  auto witness = interior_witness(vq, *f, target, 0.0, 1.0,
                                  opts.hyperbolicity_threshold, cert);
  if (!witness) return fail("certification", "interior witness lost");
  cert.flow_tol = opts.tol / 10.0;
  auto tight = interior_witness(vq, *f, target, 0.0, 1.0,
                                opts.hyperbolicity_threshold, cert);
  if (!tight || std::abs(tight->multiplier - witness->multiplier) >
                    0.1 * std::abs(witness->multiplier))
    return fail("certification", "witness not stable under tighter tolerance");
  rep.multiplier = tight->multiplier;
  rep.witness_x0 = tight->x0;
  rep.stage = "done";
  rep.success = true;
  return {f, rep};
}

}  // namespace torusflow

#endif
