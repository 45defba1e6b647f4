#include "qkdng/thermal_bath.hpp"

#include "qkdng/error.hpp"
#include "validate.hpp"

namespace qkdng {

namespace {

// Bath photons reach the receiver through the reflected port, 1 - T.
ArrivalLaw bath_mode(const ThermalBathParams& params) {
  return ArrivalLaw::of(PhotonDistribution::thermal(params.mu * (1.0 - params.T)));
}

struct KeyTerms {
  double signal;  // sum_k p_+(k,0)
  double noise;   // sum_{k>=1} p_-(k,0)
  double empty;   // p_-(0,0)
};

KeyTerms key_terms(const ThermalBathParams& params) {
  params.validate();
  const double arrive = params.p * params.T;
  const ArrivalLaw bath = bath_mode(params);
  return {arrive * bath.none, (1.0 - arrive) * bath.none * bath.at_least_one,
          (1.0 - arrive) * bath.none * bath.none};
}

}  // namespace

void ThermalBathParams::validate() const {
  detail::require_probability(p, "p");
  detail::require_probability(T, "T");
  detail::require_mean(mu, "mu");
  detail::require_probability(e, "e");
  detail::require_dark_count(d);
}

double p_plus(const ThermalBathParams& params, std::int64_t k, std::int64_t l) {
  params.validate();
  const auto bath = PhotonDistribution::thermal(params.mu);
  return params.p * params.T * pi_k(bath, params.T, k) * pi_k(bath, params.T, l);
}

double p_minus(const ThermalBathParams& params, std::int64_t k, std::int64_t l) {
  params.validate();
  const auto bath = PhotonDistribution::thermal(params.mu);
  return (1.0 - params.p * params.T) * pi_k(bath, params.T, k) * pi_k(bath, params.T, l);
}

double p_exp_I(const ThermalBathParams& params) {
  const KeyTerms t = key_terms(params);
  return t.signal + 2.0 * t.noise + 2.0 * params.d * t.empty;
}

double qber_I(const ThermalBathParams& params) {
  const KeyTerms t = key_terms(params);
  const double accepted = t.signal + 2.0 * t.noise + 2.0 * params.d * t.empty;
  if (!(accepted > 0.0)) throw UndefinedRateError("no accepted events: p_exp = 0");
  return (params.e / 2.0 * t.signal + t.noise + params.d * t.empty) / accepted;
}

KeyRateResult key_rate_I(const ThermalBathParams& params) {
  KeyRateResult r;
  r.p_exp = p_exp_I(params);
  r.qber = qber_I(params);
  r.single_photon_fraction = 1.0;
  r.delta_i = secret_fraction_ideal(r.qber);
  return r;
}

ClickStats click_stats_I(const ThermalBathParams& params) {
  params.validate();
  const ArrivalLaw bath = bath_mode(params);
  return click_stats_from(ArrivalLaw::bernoulli(params.p * params.T) * bath * bath);
}

Omega omega_I(const ThermalBathParams& params) {
  params.validate();
  const ArrivalLaw bath = bath_mode(params);
  return omega_from(ArrivalLaw::bernoulli(params.p * params.T) * bath * bath);
}

}  // namespace qkdng
