// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_LIFTED_MAP_HPP
#define TORUSFLOW_LIFTED_MAP_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "torusflow/common.hpp"

namespace torusflow {

/// Sampled lift H of an orientation-preserving circle diffeomorphism:
/// values H(x_i) at x_i = 2*pi*i/n, extended by H(x + 2*pi) = H(x) + 2*pi,
/// evaluated between nodes with monotone cubic (harmonic-mean tangent)
/// Hermite interpolation. Stored values must be strictly increasing with
/// H(x_{n-1}) < H(x_0) + 2*pi.
///
/// A map may carry an optional exact point evaluator (value, derivative)
/// from whatever produced it (an ODE flow or a group word); root polishing
/// and multipliers use it when present.
class LiftedMap {
 public:
  using PointEval = std::function<std::pair<double, double>(double)>;

  explicit LiftedMap(std::vector<double> values, PointEval exact = nullptr)
      : values_(std::move(values)), exact_(std::move(exact)) {
    const int n = grid_size();
    if (n < 16) throw PreconditionError("LiftedMap: grid size must be >= 16");
    for (int i = 0; i + 1 < n; ++i)
      if (values_[i + 1] <= values_[i])
        throw NumericsError("LiftedMap: values not strictly increasing");
    if (values_[n - 1] >= values_[0] + two_pi)
      throw NumericsError("LiftedMap: degree-one bound violated");
    build_tangents();
  }

  static LiftedMap translation(int n, double a) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = two_pi * i / n + a;
    return LiftedMap(std::move(v),
                     [a](double x) { return std::make_pair(x + a, 1.0); });
  }

  static LiftedMap identity(int n) { return translation(n, 0.0); }

  int grid_size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& grid_values() const { return values_; }
  double node(int i) const { return two_pi * i / grid_size(); }

  bool has_exact() const { return static_cast<bool>(exact_); }
  std::pair<double, double> exact(double x) const { return exact_(x); }
  void set_exact(PointEval e) { exact_ = std::move(e); }

  double operator()(double x) const { return eval(x).first; }
  double derivative(double x) const { return eval(x).second; }

  /// Interpolated (H(x), H'(x)).
  std::pair<double, double> eval(double x) const {
    const int n = grid_size();
    const double h = two_pi / n;
    const double shift = two_pi * std::floor(x / two_pi);
    const double u = x - shift;  // in [0, 2*pi)
    int i = static_cast<int>(u / h);
    if (i >= n) i = n - 1;
    const double s = (u - i * h) / h;
    const double p1 = values_[i];
    const double p2 = (i + 1 < n) ? values_[i + 1] : values_[0] + two_pi;
    const double m1 = tangents_[i] * h;
    const double m2 = tangents_[(i + 1) % n] * h;
    const double s2 = s * s, s3 = s2 * s;
    const double val = (2 * s3 - 3 * s2 + 1) * p1 + (s3 - 2 * s2 + s) * m1 +
                       (-2 * s3 + 3 * s2) * p2 + (s3 - s2) * m2;
    const double der = ((6 * s2 - 6 * s) * p1 + (3 * s2 - 4 * s + 1) * m1 +
                        (-6 * s2 + 6 * s) * p2 + (3 * s2 - 2 * s) * m2) /
                       h;
    return {val + shift, der};
  }

 private:
  void build_tangents() {
    const int n = grid_size();
    const double h = two_pi / n;
    std::vector<double> secant(n);
    for (int i = 0; i < n; ++i) {
      const double next = (i + 1 < n) ? values_[i + 1] : values_[0] + two_pi;
      secant[i] = (next - values_[i]) / h;
    }
    tangents_.resize(n);
    for (int i = 0; i < n; ++i) {
      const double dl = secant[(i + n - 1) % n], dr = secant[i];
      // Harmonic mean: stays in the monotonicity region of the cubic.
      tangents_[i] = 2.0 * dl * dr / (dl + dr);
    }
  }

  std::vector<double> values_;
  std::vector<double> tangents_;
  PointEval exact_;
};

/// (g1 o g2); a coarser operand is resampled to the finer grid first.
inline LiftedMap compose(const LiftedMap& g1, const LiftedMap& g2) {
  const int n = std::max(g1.grid_size(), g2.grid_size());
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = g1(g2(two_pi * i / n));
  LiftedMap::PointEval exact;
  if (g1.has_exact() && g2.has_exact()) {
    exact = [g1, g2](double x) {
      const auto [y, dy] = g2.exact(x);
      const auto [z, dz] = g1.exact(y);
      return std::make_pair(z, dz * dy);
    };
  }
  return LiftedMap(std::move(v), std::move(exact));
}

/// q-fold composition by binary powering (q >= 1).
inline LiftedMap map_power(const LiftedMap& g, int q) {
  if (q < 1) throw PreconditionError("map_power: q must be >= 1");
  LiftedMap acc = g;
  LiftedMap sq = g;
  bool have_acc = false;
  int e = q;
  while (true) {
    if (e & 1) {
      acc = have_acc ? compose(sq, acc) : sq;
      have_acc = true;
    }
    e >>= 1;
    if (e == 0) break;
    sq = compose(sq, sq);
  }
  return acc;
}

/// max over grid nodes of |D^j g1 - D^j g2| for j = 0..k, derivatives by
/// centered differences; grids must match.
inline double ck_distance(const LiftedMap& g1, const LiftedMap& g2, int k) {
  if (g1.grid_size() != g2.grid_size())
    throw PreconditionError("ck_distance: grid sizes differ");
  if (k < 0 || k > 2) throw PreconditionError("ck_distance: k must be 0..2");
  const int n = g1.grid_size();
  const double h = two_pi / n;
  std::vector<double> diff(n);
  for (int i = 0; i < n; ++i) diff[i] = g1.grid_values()[i] - g2.grid_values()[i];
  double dist = 0.0;
  // diff is 2*pi-periodic (both lifts are degree one), so plain periodic
  // centered differences apply to every order.
  std::vector<double> cur = diff;
  for (int j = 0; j <= k; ++j) {
    for (double d : cur) dist = std::max(dist, std::abs(d));
    if (j == k) break;
    std::vector<double> next(n);
    for (int i = 0; i < n; ++i)
      next[i] = (cur[(i + 1) % n] - cur[(i + n - 1) % n]) / (2 * h);
    cur = std::move(next);
  }
  return dist;
}

}  // namespace torusflow

#endif
