#include "qkdng/noise_before.hpp"

#include "qkdng/error.hpp"
#include "validate.hpp"

namespace qkdng {

namespace {

// Every noise photon crosses the lossy channel, so the arriving noise keeps
// its law with mean mu T.
PhotonDistribution arriving_noise(const NoiseBeforeParams& params) {
  return PhotonDistribution(params.noise, params.mu * params.T);
}

}  // namespace

void NoiseBeforeParams::validate() const {
  detail::require_probability(p, "p");
  detail::require_probability(T, "T");
  detail::require_mean(mu, "mu");
  detail::require_probability(e, "e");
  detail::require_dark_count(d);
}

EventProbsII event_probs_II(const NoiseBeforeParams& params) {
  params.validate();
  const double arrive = params.p * params.T;
  const PhotonDistribution noise = arriving_noise(params);
  const double no_noise = ArrivalLaw::of(noise).none;  // sum_i p_i (1-T)^i
  const double same_side = same_detector_share(noise);  // sum_i p_i r_i(T)
  EventProbsII probs;
  probs.signal_only = arrive * no_noise;
  probs.noise_only = 2.0 * (1.0 - arrive) * same_side;
  probs.noise_and_signal = arrive * same_side;
  probs.dark_count = 2.0 * params.d * (1.0 - arrive) * no_noise;
  return probs;
}

double qber_II(const NoiseBeforeParams& params) {
  const EventProbsII probs = event_probs_II(params);
  const double accepted = probs.total();
  if (!(accepted > 0.0)) throw UndefinedRateError("no accepted events: p_exp = 0");
  return (params.e * (probs.signal_only + probs.noise_and_signal) + probs.noise_only +
          probs.dark_count) /
         (2.0 * accepted);
}

KeyRateResult key_rate_II(const NoiseBeforeParams& params) {
  KeyRateResult r;
  r.p_exp = event_probs_II(params).total();
  r.qber = qber_II(params);
  r.single_photon_fraction = 1.0;
  r.delta_i = secret_fraction_ideal(r.qber);
  return r;
}

ClickStats click_stats_II(const NoiseBeforeParams& params) {
  params.validate();
  return click_stats_from(ArrivalLaw::bernoulli(params.p * params.T) *
                          ArrivalLaw::of(arriving_noise(params)));
}

Omega omega_II(const NoiseBeforeParams& params) {
  params.validate();
  return omega_from(ArrivalLaw::bernoulli(params.p * params.T) *
                    ArrivalLaw::of(arriving_noise(params)));
}

}  // namespace qkdng
