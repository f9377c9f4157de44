// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_ODE_HPP
#define TORUSFLOW_ODE_HPP

#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "torusflow/common.hpp"
#include "torusflow/step_forcing.hpp"
#include "torusflow/trig_poly.hpp"

namespace torusflow {

/// 2*pi-periodic function given by values on a uniform grid over [0,2*pi),
/// evaluated with periodic Catmull-Rom interpolation.
class SampledForcing {
 public:
  explicit SampledForcing(std::vector<double> values)
      : values_(std::move(values)) {
    if (values_.size() < 4)
      throw PreconditionError("SampledForcing: need at least 4 samples");
  }

  double operator()(double t) const {
    const int n = static_cast<int>(values_.size());
    const double u = wrap_angle(t) * n / two_pi;
    const int i = static_cast<int>(u);
    const double s = u - i;
    auto at = [&](int j) { return values_[((j % n) + n) % n]; };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return p1 + 0.5 * s *
                    (p2 - p0 +
                     s * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                          s * (3 * (p1 - p2) + p3 - p0)));
  }

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

using Forcing = std::variant<TrigPoly, StepForcing, SampledForcing>;

inline double forcing_eval(const Forcing& f, double t) {
  return std::visit([&](const auto& g) { return g(t); }, f);
}

/// Times in [0, 2*pi] across which the forcing is not smooth.
inline std::span<const double> forcing_breakpoints(const Forcing& f) {
  if (const auto* sf = std::get_if<StepForcing>(&f)) return sf->breakpoints();
  return {};
}

/// One member of the two-parameter torus family  dx/dt = v(x) + A + B f(t).
struct TorusODE {
  TrigPoly v;
  double A = 0.0;
  double B = 0.0;
  Forcing f = TrigPoly{};

  double rhs(double x, double t) const {
    return v(x) + A + B * forcing_eval(f, t);
  }
};

}  // namespace torusflow

#endif
