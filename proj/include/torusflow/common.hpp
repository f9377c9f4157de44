// Copyright 2026 The torusflow authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TORUSFLOW_COMMON_HPP
#define TORUSFLOW_COMMON_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace torusflow {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2*pi).
inline double wrap_angle(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0) y += two_pi;
  return y;
}

/// Base class for all numerical failures (step-size underflow,
/// monotonicity violations, unbracketed roots).
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepSizeUnderflow : NumericsError {
  using NumericsError::NumericsError;
};

/// Violated precondition on an operation's inputs.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or string.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long gcd_long(long a, long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    long r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace torusflow

#endif
