#include "qkdng/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdng/error.hpp"
#include "qkdng/security.hpp"
#include "validate.hpp"

namespace qkdng::analytic {

namespace {

// 2 Q_th - e, clamped at zero.
double qkd_margin(double e) {
  detail::require_probability(e, "e");
  return std::max(0.0, 2.0 * qber_threshold() - e);
}

double dark_count_floor(double e, double d) {
  detail::require_probability(e, "e");
  detail::require_dark_count(d);
  const double q_th = qber_threshold();
  if (!(e / 2.0 < q_th)) {
    throw InfeasibleError("e = " + std::to_string(e) + " exceeds twice the QBER threshold");
  }
  return d * (1.0 - 2.0 * q_th) / (q_th - e / 2.0);
}

}  // namespace

double mu_max_qkd_I(double p, double e, double T) {
  detail::require_probability(p, "p");
  detail::require_probability(T, "T");
  return p * qkd_margin(e) / (2.0 * (1.0 - 2.0 * qber_threshold())) * T;
}

double mu_max_qkd_II(double p, double e) {
  detail::require_probability(p, "p");
  return p * qkd_margin(e) / (1.0 - 2.0 * qber_threshold());
}

double mu_max_qkd_III(double e, double T) {
  detail::require_probability(T, "T");
  return qkd_margin(e) / (2.0 * (1.0 - 2.0 * qber_threshold())) * T;
}

double mu_max_nc_I(double p, double T) { return p * T / std::sqrt(2.0); }
double mu_max_ng_I(double p, double T) { return p * p * T * T / 2.0; }
double mu_max_nc_II(double p) { return p; }
double mu_max_ng_II(double p, double T) { return p * p * T; }
double mu_max_nc_III(double T) { return T / std::sqrt(2.0); }
double mu_max_ng_III(double T) { return T * T / 2.0; }

double t_min_I_II(double p, double e, double d) {
  detail::require_probability(p, "p");
  if (p == 0.0) throw InfeasibleError("p = 0: nothing to transmit");
  return dark_count_floor(e, d) / p;
}

double t_min_III_small_nu(double e, double d) { return dark_count_floor(e, d); }

double t_min_III_large_nu(double e, double nu) {
  detail::require_mean(nu, "nu");
  return nu / (2.0 * (1.0 - y_threshold(e)));
}

double t_min_ng_III(double nu) {
  detail::require_mean(nu, "nu");
  return nu / 2.0;
}

}  // namespace qkdng::analytic
