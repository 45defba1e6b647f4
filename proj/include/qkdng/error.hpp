#pragma once

#include <stdexcept>
#include <string>

namespace qkdng {

/// Argument outside the mathematical domain of an operation (negative mean,
/// probability outside [0,1], P_S beyond the nonclassicality boundary, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A rate was requested whose denominator vanishes (no accepted events).
class UndefinedRateError : public std::runtime_error {
 public:
  explicit UndefinedRateError(const std::string& what) : std::runtime_error(what) {}
};

/// A root or threshold does not exist for the given parameters.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Query outside the span of a tabulated curve.
class OutOfSpanError : public std::out_of_range {
 public:
  explicit OutOfSpanError(const std::string& what) : std::out_of_range(what) {}
};

/// A truncated series hit SeriesPolicy::max_terms before its tail bound.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qkdng
