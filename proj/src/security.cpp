#include "qkdng/security.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdng/bisection.hpp"
#include "qkdng/error.hpp"

namespace qkdng {

namespace {

constexpr double kRootTolerance = 1e-9;
// Round-off allowance for QBERs that are 1/2 analytically.
constexpr double kQberSlack = 1e-12;

double checked_qber(double qber) {
  if (!(qber >= 0.0 && qber <= 0.5 + kQberSlack)) {
    throw DomainError("QBER must lie in [0, 1/2], got " + std::to_string(qber));
  }
  return std::min(qber, 0.5);
}

}  // namespace

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("binary entropy argument must lie in [0,1], got " + std::to_string(q));
  }
  if (q == 0.0 || q == 1.0) return 0.0;
  return -(q * std::log2(q) + (1.0 - q) * std::log1p(-q) / std::log(2.0));
}

double secret_fraction_ideal(double qber) {
  const double q = checked_qber(qber);
  return std::max(0.0, 1.0 - 2.0 * binary_entropy(q));
}

double secret_fraction_multiphoton(double qber, double single_photon_fraction) {
  const double q = checked_qber(qber);
  const double y = single_photon_fraction;
  if (!(y >= 0.0 && y <= 1.0)) {
    throw DomainError("single-photon fraction must lie in [0,1], got " + std::to_string(y));
  }
  if (y == 0.0 || q > y) return 0.0;
  return std::max(0.0, y - binary_entropy(q) - y * binary_entropy(q / y));
}

double qber_threshold() {
  static const double root =
      bisect_root([](double q) { return 1.0 - 2.0 * binary_entropy(q); }, 0.01, 0.5,
                  kRootTolerance);
  return root;
}

double y_threshold(double depolarization) {
  const double e = depolarization;
  if (!(e >= 0.0 && e <= 1.0)) throw DomainError("depolarization must lie in [0,1]");
  if (e == 0.0) return 0.0;
  const double h_half_e = binary_entropy(e / 2.0);
  auto condition = [&](double y) { return y * (1.0 - binary_entropy(e / (2.0 * y))) - h_half_e; };
  if (!(condition(1.0) > 0.0)) {
    throw InfeasibleError("no single-photon fraction y <= 1 is secure at e = " + std::to_string(e));
  }
  return bisect_root(condition, e / 2.0, 1.0, kRootTolerance);
}

}  // namespace qkdng
