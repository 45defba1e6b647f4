#pragma once

#include "qkdng/click_stats.hpp"
#include "qkdng/photon_stats.hpp"
#include "qkdng/security.hpp"

namespace qkdng {

/// Ideal sub-unity single-photon source; noise with a random fixed
/// polarization joins the signal before the lossy channel.
struct NoiseBeforeParams {
  double p = 1.0;
  double T = 1.0;
  double mu = 0.0;  // mean noise photons per pulse
  double e = 0.0;
  double d = 0.0;
  PhotonLaw noise = PhotonLaw::Thermal;

  void validate() const;
};

/// Accepted single-click events split by what caused them.
struct EventProbsII {
  double signal_only = 0.0;
  double noise_only = 0.0;
  double noise_and_signal = 0.0;
  double dark_count = 0.0;

  double total() const { return signal_only + noise_only + noise_and_signal + dark_count; }
};

EventProbsII event_probs_II(const NoiseBeforeParams& params);
double qber_II(const NoiseBeforeParams& params);
KeyRateResult key_rate_II(const NoiseBeforeParams& params);

ClickStats click_stats_II(const NoiseBeforeParams& params);
Omega omega_II(const NoiseBeforeParams& params);

}  // namespace qkdng
