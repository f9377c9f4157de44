// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_TRIG_POLY_HPP
#define TORUSFLOW_TRIG_POLY_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "torusflow/common.hpp"

namespace torusflow {

struct Harmonic {
  int degree;        // k >= 1
  double cos_coeff;  // a_k
  double sin_coeff;  // b_k
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Finite Fourier series p(x) = c + sum_k (a_k cos kx + b_k sin kx).
///
/// Stored in canonical form: harmonics sorted by degree, degrees >= 1 and
/// distinct, and a pair is dropped outright when max(|a_k|,|b_k|) falls
/// below drop_tol (keeps the harmonic gcd meaningful under rounding).
class TrigPoly {
 public:
  static constexpr double drop_tol = 1e-14;

  TrigPoly() = default;
  explicit TrigPoly(double constant) : constant_(constant) {}

  static TrigPoly sine(int k, double amplitude = 1.0) {
    TrigPoly p;
    p.add_harmonic(k, 0.0, amplitude);
    return p;
  }
  static TrigPoly cosine(int k, double amplitude = 1.0) {
    TrigPoly p;
    p.add_harmonic(k, amplitude, 0.0);
    return p;
  }

  /// Accumulate (a, b) onto degree k, re-canonicalizing.
  TrigPoly& add_harmonic(int k, double a, double b) {
    if (k < 1) throw PreconditionError("harmonic degree must be >= 1");
    auto it = std::lower_bound(
        harmonics_.begin(), harmonics_.end(), k,
        [](const Harmonic& h, int deg) { return h.degree < deg; });
    if (it != harmonics_.end() && it->degree == k) {
      it->cos_coeff += a;
      it->sin_coeff += b;
      if (std::max(std::abs(it->cos_coeff), std::abs(it->sin_coeff)) <
          drop_tol) {
        harmonics_.erase(it);
      }
    } else if (std::max(std::abs(a), std::abs(b)) >= drop_tol) {
      harmonics_.insert(it, Harmonic{k, a, b});
    }
    return *this;
  }

  TrigPoly& add_constant(double c) {
    constant_ += c;
    return *this;
  }

  double constant_term() const { return constant_; }
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }
  bool is_constant() const { return harmonics_.empty(); }
  int max_degree() const {
    return harmonics_.empty() ? 0 : harmonics_.back().degree;
  }

  /// Evaluate by direct summation; cos kx / sin kx by angle-addition
  /// recurrence so the cost is O(max degree) independent of sparsity.
  double operator()(double x) const {
    double acc = constant_;
    if (harmonics_.empty()) return acc;
    const double c1 = std::cos(x), s1 = std::sin(x);
    double ck = c1, sk = s1;
    auto it = harmonics_.begin();
    for (int k = 1; it != harmonics_.end(); ++k) {
      if (it->degree == k) {
        acc += it->cos_coeff * ck + it->sin_coeff * sk;
        ++it;
      }
      const double cn = ck * c1 - sk * s1;
      const double sn = sk * c1 + ck * s1;
      ck = cn;
      sk = sn;
    }
    return acc;
  }

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  double constant_ = 0.0;
  std::vector<Harmonic> harmonics_;  // sorted by degree, canonical
};

/// p' with (a_k, b_k) -> (k b_k, -k a_k); constant term drops.
inline TrigPoly derivative(const TrigPoly& p) {
  TrigPoly d;
  for (const Harmonic& h : p.harmonics())
    d.add_harmonic(h.degree, h.degree * h.sin_coeff, -h.degree * h.cos_coeff);
  return d;
}

/// gcd of degrees carrying a nonzero pair; absent for constants.
inline std::optional<int> harmonic_gcd(const TrigPoly& p) {
  if (p.is_constant()) return std::nullopt;
  int g = 0;
  for (const Harmonic& h : p.harmonics()) g = std::gcd(g, h.degree);
  return g;
}

struct SpecialFormResult {
  bool special;          // true iff at most one harmonic degree present
  std::optional<int> m;  // that degree; absent for pure constants
};

/// Detects v = a sin mx + b cos mx + c. Two or more distinct degrees
/// (nonzero non-opposite, in the complex-exponential picture) means
/// "not special".
inline SpecialFormResult is_special_form(const TrigPoly& p) {
  if (p.is_constant()) return {true, std::nullopt};
  if (p.harmonics().size() == 1) return {true, p.harmonics().front().degree};
  return {false, std::nullopt};
}

/// Divide every harmonic degree by m (the quotient-circle projection).
inline TrigPoly quotient_field(const TrigPoly& p, int m) {
  if (m < 1) throw PreconditionError("quotient_field: m must be positive");
  TrigPoly q(p.constant_term());
  for (const Harmonic& h : p.harmonics()) {
    if (h.degree % m != 0)
      throw PreconditionError(
          "quotient_field: m does not divide harmonic degree " +
          std::to_string(h.degree));
    q.add_harmonic(h.degree / m, h.cos_coeff, h.sin_coeff);
  }
  return q;
}

/// Degree-N Fourier truncation of a 2*pi-periodic function given by
/// samples on the uniform grid t_j = 2*pi*j/n, j = 0..n-1. Coefficients
/// are trapezoid-rule integrals, spectrally accurate for smooth input and
/// exact (to rounding) for band-limited input of degree <= N.
inline TrigPoly truncate_fourier(std::span<const double> samples, int degree) {
  const int n = static_cast<int>(samples.size());
  if (degree < 0) throw PreconditionError("truncate_fourier: degree < 0");
  if (n < 4 * degree + 4)
    throw PreconditionError(
        "truncate_fourier: need n >= 4N + 4 samples, got n = " +
        std::to_string(n) + " for N = " + std::to_string(degree));
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= n;
  TrigPoly p(mean);
  // One pass per sample over all degrees via the same angle recurrence.
  std::vector<double> a(degree + 1, 0.0), b(degree + 1, 0.0);
  for (int j = 0; j < n; ++j) {
    const double t = two_pi * j / n;
    const double c1 = std::cos(t), s1 = std::sin(t);
    double ck = c1, sk = s1;
    for (int k = 1; k <= degree; ++k) {
      a[k] += samples[j] * ck;
      b[k] += samples[j] * sk;
      const double cn = ck * c1 - sk * s1;
      const double sn = sk * c1 + ck * s1;
      ck = cn;
      sk = sn;
    }
  }
  for (int k = 1; k <= degree; ++k)
    p.add_harmonic(k, 2.0 * a[k] / n, 2.0 * b[k] / n);
  return p;
}

}  // namespace torusflow

#endif
