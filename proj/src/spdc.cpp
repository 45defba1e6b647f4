#include "qkdng/spdc.hpp"

#include <algorithm>
#include <cmath>

#include "qkdng/error.hpp"
#include "validate.hpp"

namespace qkdng {

namespace {

ArrivalLaw bath_mode(const SpdcParams& params) {
  return ArrivalLaw::of(PhotonDistribution::thermal(params.mu * (1.0 - params.T)));
}

ArrivalLaw arrivals(const SpdcParams& params) {
  params.validate();
  if (params.nu == 0.0) throw UndefinedRateError("nu = 0: the source is never heralded");
  const ArrivalLaw bath = bath_mode(params);
  return ArrivalLaw::heralded_poisson(params.nu, params.T) * bath * bath;
}

}  // namespace

void SpdcParams::validate() const {
  detail::require_mean(nu, "nu");
  detail::require_probability(T, "T");
  detail::require_mean(mu, "mu");
  detail::require_probability(e, "e");
  detail::require_dark_count(d);
}

double heralded_pmf(double nu, std::int64_t i) {
  detail::require_mean(nu, "nu");
  if (i < 0) throw DomainError("photon number must be nonnegative");
  if (i == 0) return 0.0;
  return PhotonDistribution::poisson(nu).pmf(i);
}

double herald_probability(double nu) {
  detail::require_mean(nu, "nu");
  return -std::expm1(-nu);
}

double P_plus(const SpdcParams& params, std::int64_t k, std::int64_t l) {
  params.validate();
  const auto bath = PhotonDistribution::thermal(params.mu);
  // sum_i q_i t_i(T) = 1 - e^{-nu T}
  const double through = -std::expm1(-params.nu * params.T);
  return through * pi_k(bath, params.T, k) * pi_k(bath, params.T, l);
}

double P_minus(const SpdcParams& params, std::int64_t k, std::int64_t l) {
  params.validate();
  const auto bath = PhotonDistribution::thermal(params.mu);
  // sum_i q_i (1 - t_i(T)) = e^{-nu T} - e^{-nu}
  const double lost = std::exp(-params.nu) * std::expm1(params.nu * (1.0 - params.T));
  return lost * pi_k(bath, params.T, k) * pi_k(bath, params.T, l);
}

SpdcKeyStats key_stats_III(const SpdcParams& params) {
  params.validate();
  const ArrivalLaw signal = ArrivalLaw::heralded_poisson(params.nu, params.T);
  const ArrivalLaw bath = bath_mode(params);
  const double through = signal.at_least_one;
  const double lost = signal.none;
  const double pi0 = bath.none;

  const double signal_clicks = through * pi0;
  const double noise_clicks = lost * pi0 * bath.at_least_one;
  const double empty = lost * pi0 * pi0;

  SpdcKeyStats s;
  s.p_exp = signal_clicks + 2.0 * noise_clicks + 2.0 * params.d * empty;
  if (!(s.p_exp > 0.0)) throw UndefinedRateError("no accepted events: p_exp = 0");
  s.p_multi = poisson_at_least_two(params.nu);
  s.single_photon_fraction = std::max(0.0, (s.p_exp - s.p_multi) / s.p_exp);
  s.qber = (params.e / 2.0 * signal_clicks + noise_clicks + params.d * empty) / s.p_exp;
  return s;
}

KeyRateResult key_rate_III(const SpdcParams& params) {
  const SpdcKeyStats s = key_stats_III(params);
  KeyRateResult r;
  r.p_exp = s.p_exp;
  r.qber = s.qber;
  r.single_photon_fraction = s.single_photon_fraction;
  r.delta_i = secret_fraction_multiphoton(s.qber, s.single_photon_fraction);
  return r;
}

ClickStats click_stats_III(const SpdcParams& params) { return click_stats_from(arrivals(params)); }

Omega omega_III(const SpdcParams& params) { return omega_from(arrivals(params)); }

}  // namespace qkdng
