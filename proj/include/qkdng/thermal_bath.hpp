#pragma once

#include <cstdint>

#include "qkdng/click_stats.hpp"
#include "qkdng/security.hpp"

namespace qkdng {

/// Ideal sub-unity single-photon source; lossy channel coupled to two
/// independent thermal baths (one per polarization mode).
struct ThermalBathParams {
  double p = 1.0;   // emission probability per pulse
  double T = 1.0;   // channel transmittance
  double mu = 0.0;  // mean bath photons per pulse and polarization mode
  double e = 0.0;   // depolarization probability
  double d = 0.0;   // dark-count probability per gate

  void validate() const;
};

/// Signal arrives together with k (l) bath photons at the right (wrong) detector.
double p_plus(const ThermalBathParams& params, std::int64_t k, std::int64_t l);
/// Signal lost; k and l bath photons arrive.
double p_minus(const ThermalBathParams& params, std::int64_t k, std::int64_t l);

double p_exp_I(const ThermalBathParams& params);
double qber_I(const ThermalBathParams& params);
KeyRateResult key_rate_I(const ThermalBathParams& params);

ClickStats click_stats_I(const ThermalBathParams& params);
Omega omega_I(const ThermalBathParams& params);

}  // namespace qkdng
