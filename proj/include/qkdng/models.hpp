#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qkdng/click_stats.hpp"
#include "qkdng/noise_before.hpp"
#include "qkdng/security.hpp"
#include "qkdng/spdc.hpp"
#include "qkdng/thermal_bath.hpp"

namespace qkdng {

enum class Model { ThermalBath, NoiseBefore, Spdc };

/// Parameter record shared by all three channel models.  Fields a model does
/// not use are ignored (p for Spdc, nu and noise for the single-photon
/// models).
struct ModelParams {
  Model model = Model::ThermalBath;
  double p = 1.0;
  double nu = 0.01;
  double T = 1.0;
  double mu = 0.0;
  double e = 0.0;
  double d = 0.0;
  PhotonLaw noise = PhotonLaw::Thermal;

  ModelParams with_T(double t) const;
  ModelParams with_mu(double m) const;

  ThermalBathParams thermal_bath() const { return {p, T, mu, e, d}; }
  NoiseBeforeParams noise_before() const { return {p, T, mu, e, d, noise}; }
  SpdcParams spdc() const { return {nu, T, mu, e, d}; }

  void validate() const;
};

KeyRateResult key_rate(const ModelParams& params);
ClickStats click_stats(const ModelParams& params);
Omega omega(const ModelParams& params);

std::string_view to_string(Model model);
std::string_view to_string(PhotonLaw law);
std::optional<Model> parse_model(std::string_view name);
std::optional<PhotonLaw> parse_photon_law(std::string_view name);

}  // namespace qkdng
