#pragma once

#include <cstdint>

#include "qkdng/click_stats.hpp"
#include "qkdng/security.hpp"

namespace qkdng {

/// Ideally heralded SPDC source (Poisson pair statistics) sending through the
/// thermal-bath channel.
struct SpdcParams {
  double nu = 0.01;  // mean photon pairs per pump pulse
  double T = 1.0;
  double mu = 0.0;
  double e = 0.0;
  double d = 0.0;

  void validate() const;
};

/// Probability that an i-photon signal pulse is produced and heralded
/// (q_0 = 0).
double heralded_pmf(double nu, std::int64_t i);
/// sum_i q_i = 1 - e^-nu.
double herald_probability(double nu);

double P_plus(const SpdcParams& params, std::int64_t k, std::int64_t l);
double P_minus(const SpdcParams& params, std::int64_t k, std::int64_t l);

/// Key-generation statistics.  p_exp and p_multi are per pump pulse
/// (not conditioned on a herald); y and Q are ratios and unaffected.
struct SpdcKeyStats {
  double p_exp = 0.0;
  double p_multi = 0.0;
  double single_photon_fraction = 0.0;
  double qber = 0.0;
};

SpdcKeyStats key_stats_III(const SpdcParams& params);
KeyRateResult key_rate_III(const SpdcParams& params);

/// Herald-conditioned autocorrelation statistics.
ClickStats click_stats_III(const SpdcParams& params);
Omega omega_III(const SpdcParams& params);

}  // namespace qkdng
