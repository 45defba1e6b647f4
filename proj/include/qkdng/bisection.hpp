#pragma once

#include <cmath>

#include "qkdng/error.hpp"

namespace qkdng {

/// Root of a continuous f on [lower, upper] with f(lower), f(upper) of
/// opposite sign, to an absolute tolerance on the argument.
template <typename Function>
double bisect_root(Function&& f, double lower, double upper, double abs_tol) {
  double f_lower = f(lower);
  const double f_upper = f(upper);
  if (f_lower == 0.0) return lower;
  if (f_upper == 0.0) return upper;
  if (std::signbit(f_lower) == std::signbit(f_upper)) {
    throw InfeasibleError("bisection bracket has no sign change");
  }
  while (upper - lower > abs_tol) {
    const double middle = 0.5 * (lower + upper);
    if (middle == lower || middle == upper) break;
    const double f_middle = f(middle);
    if (f_middle == 0.0) return middle;
    if (std::signbit(f_middle) == std::signbit(f_lower)) {
      lower = middle;
      f_lower = f_middle;
    } else {
      upper = middle;
    }
  }
  return 0.5 * (lower + upper);
}

/// Boundary of a predicate that holds at `inside` and fails at `outside`,
/// located by bisection in log space to a relative tolerance.  Both points
/// must be positive.
template <typename Predicate>
double bisect_log_boundary(Predicate&& holds, double inside, double outside, double rel_tol) {
  double lo = std::log(inside);
  double hi = std::log(outside);
  const double tol = std::log1p(rel_tol);
  while (std::abs(hi - lo) > tol) {
    const double middle = 0.5 * (lo + hi);
    if (holds(std::exp(middle))) {
      lo = middle;
    } else {
      hi = middle;
    }
  }
  return std::exp(lo);
}

}  // namespace qkdng
