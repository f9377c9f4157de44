// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_GROUP_WORD_HPP
#define TORUSFLOW_GROUP_WORD_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "torusflow/common.hpp"

namespace torusflow {

/// Parameters of a product of flows of d/dx and a fixed circle field v:
///
///   g = T_{t_1} o flow_v(tau_1) o ... o T_{t_k} o flow_v(tau_k),
///
/// where T_a is the rigid translation x -> x + a and the rightmost factor
/// acts first. Membership in the level sets G^s (sum of tau = 2*pi*s) and
/// in the positive class (all tau > 0) is computed, never stored.
struct GroupWord {
  std::vector<double> shift_times;  // t_1..t_k
  std::vector<double> field_times;  // tau_1..tau_k

  GroupWord() = default;
  GroupWord(std::vector<double> t, std::vector<double> tau)
      : shift_times(std::move(t)), field_times(std::move(tau)) {
    if (shift_times.size() != field_times.size() || shift_times.empty())
      throw PreconditionError("GroupWord: need equal, nonzero factor counts");
  }

  int length() const { return static_cast<int>(shift_times.size()); }

  double field_time_sum() const {
    double s = 0.0;
    for (double tau : field_times) s += tau;
    return s;
  }

  /// s such that sum tau_j = 2*pi*s, when one exists within tol.
  std::optional<int> level(double tol = 1e-12) const {
    const double s = field_time_sum() / two_pi;
    const double r = std::round(s);
    if (std::abs(s - r) * two_pi <= tol) return static_cast<int>(r);
    return std::nullopt;
  }

  /// In G^1 with all field times positive.
  bool in_positive_class(double tol = 1e-12) const {
    if (level(tol) != 1) return false;
    for (double tau : field_times)
      if (tau <= 0) return false;
    return true;
  }

  double min_field_time() const {
    double m = field_times.front();
    for (double tau : field_times) m = std::min(m, tau);
    return m;
  }
};

}  // namespace torusflow

#endif
