#pragma once

#include <cmath>
#include <string>

#include "qkdng/error.hpp"

namespace qkdng::detail {

inline void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
  }
}

inline void require_mean(double x, const char* name) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be finite and nonnegative, got " +
                      std::to_string(x));
  }
}

inline void require_dark_count(double d) {
  if (!(d >= 0.0 && d < 1.0)) {
    throw DomainError("dark-count probability must lie in [0,1), got " + std::to_string(d));
  }
}

}  // namespace qkdng::detail
