#include "qkdng/models.hpp"

#include "qkdng/error.hpp"

namespace qkdng {

ClickStats click_stats_from(const ArrivalLaw& arrivals) {
  if (!(arrivals.mass > 0.0)) throw UndefinedRateError("arrival law has zero mass");
  const double norm = arrivals.mass;
  return {2.0 * arrivals.below_half / norm, arrivals.curvature / norm, arrivals.none / norm};
}

Omega omega_from(const ArrivalLaw& arrivals) {
  if (!(arrivals.mass > 0.0)) throw UndefinedRateError("arrival law has zero mass");
  return {arrivals.one / arrivals.mass, arrivals.at_least_two / arrivals.mass};
}

ModelParams ModelParams::with_T(double t) const {
  ModelParams copy = *this;
  copy.T = t;
  return copy;
}

ModelParams ModelParams::with_mu(double m) const {
  ModelParams copy = *this;
  copy.mu = m;
  return copy;
}

void ModelParams::validate() const {
  switch (model) {
    case Model::ThermalBath: return thermal_bath().validate();
    case Model::NoiseBefore: return noise_before().validate();
    case Model::Spdc: return spdc().validate();
  }
}

KeyRateResult key_rate(const ModelParams& params) {
  switch (params.model) {
    case Model::ThermalBath: return key_rate_I(params.thermal_bath());
    case Model::NoiseBefore: return key_rate_II(params.noise_before());
    case Model::Spdc: return key_rate_III(params.spdc());
  }
  throw DomainError("unknown model");
}

ClickStats click_stats(const ModelParams& params) {
  switch (params.model) {
    case Model::ThermalBath: return click_stats_I(params.thermal_bath());
    case Model::NoiseBefore: return click_stats_II(params.noise_before());
    case Model::Spdc: return click_stats_III(params.spdc());
  }
  throw DomainError("unknown model");
}

Omega omega(const ModelParams& params) {
  switch (params.model) {
    case Model::ThermalBath: return omega_I(params.thermal_bath());
    case Model::NoiseBefore: return omega_II(params.noise_before());
    case Model::Spdc: return omega_III(params.spdc());
  }
  throw DomainError("unknown model");
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::ThermalBath: return "thermal-bath";
    case Model::NoiseBefore: return "noise-before";
    case Model::Spdc: return "spdc";
  }
  return "unknown";
}

std::string_view to_string(PhotonLaw law) {
  return law == PhotonLaw::Thermal ? "thermal" : "poisson";
}

std::optional<Model> parse_model(std::string_view name) {
  if (name == "thermal-bath") return Model::ThermalBath;
  if (name == "noise-before") return Model::NoiseBefore;
  if (name == "spdc") return Model::Spdc;
  return std::nullopt;
}

std::optional<PhotonLaw> parse_photon_law(std::string_view name) {
  if (name == "thermal") return PhotonLaw::Thermal;
  if (name == "poisson") return PhotonLaw::Poisson;
  return std::nullopt;
}

}  // namespace qkdng
