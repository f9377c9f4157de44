// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_STEP_FORCING_HPP
#define TORUSFLOW_STEP_FORCING_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "torusflow/common.hpp"
#include "torusflow/group_word.hpp"

namespace torusflow {

/// Smooth monotone transition on [0,1]: exactly 0 on [0,1/3], exactly 1 on
/// [2/3,1]. Flat-mollifier ratio h(3u-1)/(h(3u-1)+h(2-3u)), h(s)=exp(-1/s).
inline double bump_psi(double u) {
  auto h = [](double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; };
  const double num = h(3.0 * u - 1.0);
  const double den = num + h(2.0 - 3.0 * u);
  return den > 0 ? num / den : (u >= 0.5 ? 1.0 : 0.0);
}

/// The piecewise step forcing phi_delta realizing a positive-class group
/// word as a 2*pi-periodic non-autonomous forcing. The period splits at
/// T_s = 2*pi - sum_{j<=s} tau_j into, per factor s (walking backward in
/// time from T_{s-1}):
///
///   V_s = [T_{s-1}-d^2, T_{s-1}]          ramp down to 0,
///   R_s = [T_{s-1}-d,   T_{s-1}-d^2]      plateau at t_s/d,
///   J_s = [T_{s-1}-d-d^2, T_{s-1}-d]      ramp up from 0,
///   I_s = [T_s, T_{s-1}-d-d^2]            identically 0,
///
/// with d = delta. Plateau mass t_s*(d-d^2)/d tends to t_s as d -> 0, so
/// the flow through [0, 2*pi] tends to the word's map.
class StepForcing {
 public:
  enum class Region { interior, ramp_up, plateau, ramp_down };
  struct Segment {
    Region region;
    int factor;  // s, 1-based
    double t_lo, t_hi;
  };

  StepForcing(GroupWord word, double delta)
      : word_(std::move(word)), delta_(delta) {
    if (!word_.in_positive_class(1e-9))
      throw PreconditionError(
          "StepForcing: word must have all tau_j > 0 with sum 2*pi");
    if (delta_ <= 0 || delta_ + delta_ * delta_ >= word_.min_field_time())
      throw PreconditionError(
          "StepForcing: need 0 < delta with delta + delta^2 < min tau_j");
    const int k = word_.length();
    anchors_.resize(k + 1);
    anchors_[0] = two_pi;
    for (int s = 1; s <= k; ++s)
      anchors_[s] = anchors_[s - 1] - word_.field_times[s - 1];
    anchors_[k] = 0.0;  // exact by the class-membership check
    const double d = delta_, d2 = delta_ * delta_;
    for (int s = 1; s <= k; ++s) {
      const double T = anchors_[s - 1];
      segments_.push_back({Region::interior, s, anchors_[s], T - d - d2});
      segments_.push_back({Region::ramp_up, s, T - d - d2, T - d});
      segments_.push_back({Region::plateau, s, T - d, T - d2});
      segments_.push_back({Region::ramp_down, s, T - d2, T});
    }
    for (const Segment& seg : segments_) {
      breakpoints_.push_back(seg.t_lo);
    }
    breakpoints_.push_back(two_pi);
    std::sort(breakpoints_.begin(), breakpoints_.end());
  }

  double operator()(double t) const {
    const double u = wrap_angle(t);
    // k is small; linear scan from the back (segments are time-ordered).
    for (const Segment& seg : segments_)
      if (u >= seg.t_lo && u <= seg.t_hi) return eval_segment(seg, u);
    return 0.0;
  }

  /// Evaluate one piece's closed-form formula (also outside its segment;
  /// used to test junction continuity).
  double eval_segment(const Segment& seg, double t) const {
    const double d = delta_;
    const double T = anchors_[seg.factor - 1];
    const double height = word_.shift_times[seg.factor - 1] / d;
    switch (seg.region) {
      case Region::interior:
        return 0.0;
      case Region::ramp_up:
        return height * bump_psi((t - T + d + d * d) / (d * d));
      case Region::plateau:
        return height;
      case Region::ramp_down:
        return height * bump_psi((T - t) / (d * d));
    }
    return 0.0;
  }

  const GroupWord& word() const { return word_; }
  double delta() const { return delta_; }
  const std::vector<Segment>& segments() const { return segments_; }
  /// Times in [0, 2*pi] the integrator must not step across.
  std::span<const double> breakpoints() const { return breakpoints_; }
  /// T_s anchors, s = 0..k, decreasing from 2*pi to 0.
  std::span<const double> anchors() const { return anchors_; }

 private:
  GroupWord word_;
  double delta_;
  std::vector<double> anchors_;
  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;
};

}  // namespace torusflow

#endif
