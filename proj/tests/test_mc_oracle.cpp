#include <doctest.h>

#include <cmath>

#include "qkdng/error.hpp"
#include "qkdng/mc_oracle.hpp"

using namespace qkdng;

namespace {

ModelParams make(Model m, double p, double T, double mu, double e, double d, double nu = 0.05,
                 PhotonLaw noise = PhotonLaw::Thermal) {
  ModelParams params;
  params.model = m;
  params.p = p;
  params.T = T;
  params.mu = mu;
  params.e = e;
  params.d = d;
  params.nu = nu;
  params.noise = noise;
  return params;
}

}  // namespace

TEST_CASE("lossless noiseless single photon always clicks") {
  McConfig config;
  config.samples = 20000;
  const auto r = simulate(make(Model::ThermalBath, 1, 1, 0, 0, 0), config, Geometry::Key);
  CHECK(r.at("p_exp").value == 1.0);
  CHECK(r.at("qber").value == 0.0);
  const auto a = simulate(make(Model::ThermalBath, 1, 1, 0, 0, 0), config, Geometry::Autocorrelation);
  CHECK(a.at("p_s").value == 1.0);
  CHECK(a.at("omega_1").value == 1.0);
}

TEST_CASE("same seed, same numbers; worker count does not matter") {
  const auto params = make(Model::NoiseBefore, 0.6, 0.4, 0.2, 0.05, 1e-3);
  McConfig config;
  config.samples = 300000;
  config.seed = 99;
  config.workers = 1;
  const auto one = simulate(params, config, Geometry::Key);
  config.workers = 3;
  const auto three = simulate(params, config, Geometry::Key);
  const auto again = simulate(params, config, Geometry::Key);
  for (const auto& [name, est] : one) {
    CHECK(est.value == three.at(name).value);
    CHECK(est.value == again.at(name).value);
  }
  config.seed = 100;
  const auto other = simulate(params, config, Geometry::Key);
  CHECK(other.at("p_exp").value != one.at("p_exp").value);
}

TEST_CASE("arrival tallies close") {
  McConfig config;
  config.samples = 100000;
  const auto a = simulate(make(Model::ThermalBath, 0.5, 0.3, 0.4, 0, 0), config, Geometry::Autocorrelation);
  const double total = a.at("omega_0").value + a.at("omega_1").value + a.at("omega_2plus").value;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.at("p_s").value + a.at("p_c").value + a.at("p_none").value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random noise polarization: all j photons on one detector with probability 2/(j+1)") {
  McConfig config;
  config.samples = 1'000'000;
  config.seed = 3;
  const auto r = simulate(make(Model::NoiseBefore, 0.5, 0.8, 1.0, 0, 0), config, Geometry::Key);
  for (int j = 1; j <= 3; ++j) {
    const auto& est = r.at("same_detector_" + std::to_string(j));
    REQUIRE(est.samples > 1000);
    const double want = 2.0 / (j + 1.0);
    const double se = std::sqrt(want * (1 - want) / static_cast<double>(est.samples));
    if (j == 1) {
      CHECK(est.value == 1.0);
    } else {
      CHECK(std::abs(est.value - want) <= 4 * se);
    }
  }
}

TEST_CASE("analytic statistics fall inside the sampling noise") {
  McConfig config;
  config.samples = 400000;
  config.seed = 12;
  const ModelParams cases[] = {
      make(Model::ThermalBath, 1, 0.5, 0.01, 0, 0),
      make(Model::ThermalBath, 0.5, 0.3, 0.05, 0.04, 5e-3),
      make(Model::NoiseBefore, 0.7, 0.2, 0.25, 0.08, 2e-3),
      make(Model::NoiseBefore, 0.4, 0.6, 0.3, 0.02, 1e-3, 0.05, PhotonLaw::Poisson),
      make(Model::Spdc, 1, 0.4, 0.1, 0.05, 4e-3, 0.15),
      make(Model::Spdc, 1, 0.0, 0.1, 0.0, 0.0, 0.05),
  };
  for (const auto& params : cases) {
    for (const auto& row : compare_with_analytic(params, config)) {
      CHECK_MESSAGE(row.sigma <= 4.0, to_string(params.model), " ", row.name, " analytic ", row.analytic, " mc ",
                    row.mc, " sigma ", row.sigma);
    }
  }
}

TEST_CASE("config validation") {
  McConfig config;
  config.samples = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config.samples = 10;
  CHECK_THROWS_AS(simulate(make(Model::Spdc, 1, 0.5, 0, 0, 0, 0.0), config, Geometry::Key), UndefinedRateError);
}
