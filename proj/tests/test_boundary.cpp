#include <doctest.h>

#include <cmath>

#include "qkdng/analytic.hpp"
#include "qkdng/boundary.hpp"
#include "qkdng/error.hpp"
#include "qkdng/security.hpp"

using namespace qkdng;

namespace {

ModelParams bath(double p, double T, double e = 0, double d = 0) {
  ModelParams params;
  params.model = Model::ThermalBath;
  params.p = p;
  params.T = T;
  params.e = e;
  params.d = d;
  return params;
}

}  // namespace

TEST_CASE("criterion names") {
  CHECK(to_string(Criterion::Security) == "security");
  CHECK(to_string(Criterion::Nonclassical) == "nc");
  CHECK(to_string(Criterion::NonGaussian) == "ng");
  CHECK(parse_criterion("nonclassical") == Criterion::Nonclassical);
  CHECK(parse_criterion("ng") == Criterion::NonGaussian);
  CHECK_FALSE(parse_criterion("bogus").has_value());
}

TEST_CASE("solver options are validated") {
  SolverOptions options;
  CHECK_NOTHROW(options.validate());
  options.rel_tol = 0;
  CHECK_THROWS_AS(options.validate(), DomainError);
  options = {};
  options.witness_dark_count = 1.0;
  CHECK_THROWS_AS(options.validate(), DomainError);
}

TEST_CASE("mu_max examples") {
  const double tmin = analytic::t_min_I_II(1, 0, 1e-3);
  const auto below = mu_max_numeric(Criterion::Security, bath(1, 0.5 * tmin, 0, 1e-3));
  CHECK_FALSE(below.feasible);
  CHECK(below.mu_max == 0.0);

  const auto ng = mu_max_numeric(Criterion::NonGaussian, bath(1, 1e-2));
  REQUIRE(ng.feasible);
  CHECK(ng.mu_max / 5e-5 == doctest::Approx(1.0).epsilon(0.15));

  ModelParams two;
  two.model = Model::NoiseBefore;
  two.p = 0.5;
  two.T = 1e-3;
  const auto nc = mu_max_numeric(Criterion::Nonclassical, two);
  REQUIRE(nc.feasible);
  CHECK(nc.mu_max / 0.5 == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("mu_max lands on the predicate boundary") {
  for (Criterion c : {Criterion::Security, Criterion::Nonclassical, Criterion::NonGaussian}) {
    const auto params = bath(0.7, 0.03, 0.02, 1e-6);
    const auto r = mu_max_numeric(c, params);
    REQUIRE(r.feasible);
    CHECK_FALSE(r.capped);
    CHECK(criterion_holds(c, params.with_mu(r.mu_max)));
    CHECK_FALSE(criterion_holds(c, params.with_mu(r.mu_max * (1 + 1e-5))));
  }
}

TEST_CASE("ceiling is reported") {
  // At T = 1 the bath never reaches the receiver.  p is kept below 1/2 so
  // P_S stays inside the classical boundary's domain.
  const auto r = mu_max_numeric(Criterion::Nonclassical, bath(0.4, 1.0));
  CHECK(r.feasible);
  CHECK(r.capped);
  CHECK(r.mu_max == 1e3);
}

TEST_CASE("sweep: determinism and criterion nesting") {
  const auto grid = make_grid(1e-4, 1.0, 30, true);
  REQUIRE(grid.size() == 30);
  CHECK(grid.front() == doctest::Approx(1e-4));
  CHECK(grid.back() == 1.0);

  const auto params = bath(1, 1.0);
  const auto a = sweep(Criterion::NonGaussian, params, grid);
  SolverOptions serial;
  serial.workers = 1;
  const auto b = sweep(Criterion::NonGaussian, params, grid, serial);
  REQUIRE(a.points.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.points[i].T == grid[i]);
    CHECK(a.points[i].result.mu_max == b.points[i].result.mu_max);
    CHECK(a.points[i].result.feasible == b.points[i].result.feasible);
  }

  const auto nc = sweep(Criterion::Nonclassical, params, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.points[i].result.mu_max <= nc.points[i].result.mu_max);
  }

  // Dark counts only lower the security curve.
  const auto s0 = sweep(Criterion::Security, bath(1, 1, 0, 0), grid);
  const auto s5 = sweep(Criterion::Security, bath(1, 1, 0, 1e-5), grid);
  const auto s3 = sweep(Criterion::Security, bath(1, 1, 0, 1e-3), grid);
  CHECK(s0.feasible_count() == grid.size());
  CHECK(s3.feasible_count() < s5.feasible_count());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(s0.points[i].result.mu_max >= s5.points[i].result.mu_max);
    CHECK(s5.points[i].result.mu_max >= s3.points[i].result.mu_max);
  }
}

TEST_CASE("sweep rejects bad grids") {
  CHECK_THROWS_AS(sweep(Criterion::Security, bath(1, 1), {0.5, 0.1}), DomainError);
  CHECK_THROWS_AS(sweep(Criterion::Security, bath(1, 1), {0.0, 0.1}), DomainError);
  CHECK_THROWS_AS(sweep(Criterion::Security, bath(1, 1), {0.1, 1.5}), DomainError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 10, true), DomainError);
  CHECK_THROWS_AS(make_grid(0.1, 1.0, 1, false), DomainError);
}

TEST_CASE("t_min examples") {
  const auto r = t_min_numeric(bath(1, 1, 0, 1e-3));
  REQUIRE(r.feasible);
  CHECK(r.t_min / 7.09e-3 == doctest::Approx(1.0).epsilon(0.1));

  ModelParams three;
  three.model = Model::Spdc;
  three.nu = 1e-2;
  three.d = 1e-8;
  const auto s = t_min_numeric(three);
  REQUIRE(s.feasible);
  CHECK(s.t_min / 5e-3 == doctest::Approx(1.0).epsilon(0.1));

  const auto floor = t_min_numeric(bath(1, 1, 0, 0));
  CHECK(floor.feasible);
  CHECK(floor.reaches_floor);

  const auto hopeless = t_min_numeric(bath(1, 1, 0.3, 0));
  CHECK_FALSE(hopeless.feasible);
}

TEST_CASE("closed forms") {
  const double q = qber_threshold();
  for (double T : {1e-4, 1e-2}) {
    CHECK(analytic::mu_max_qkd_I(1, 0, T) / analytic::mu_max_qkd_III(0, T) == 1.0);
    CHECK(analytic::mu_max_nc_I(0.5, T) == doctest::Approx(0.5 * T / std::sqrt(2.0)));
    CHECK(analytic::mu_max_ng_I(0.5, T) == doctest::Approx(0.125 * T * T));
    CHECK(analytic::mu_max_ng_II(0.5, T) == doctest::Approx(0.25 * T));
    CHECK(analytic::mu_max_nc_III(T) == doctest::Approx(T / std::sqrt(2.0)));
    CHECK(analytic::mu_max_ng_III(T) == doctest::Approx(T * T / 2));
  }
  CHECK(analytic::mu_max_nc_II(0.3) == 0.3);
  CHECK(analytic::mu_max_qkd_II(1, 0) == doctest::Approx(2 * q / (1 - 2 * q)));
  CHECK(analytic::mu_max_qkd_I(1, 0.25, 0.1) == 0.0);
  CHECK(analytic::mu_max_qkd_II(1, 0.25) == 0.0);

  CHECK(analytic::t_min_I_II(1, 0, 1e-5) == doctest::Approx(1e-5 * 0.779944 / 0.110028).epsilon(1e-5));
  CHECK(analytic::t_min_I_II(1, 0, 1e-5) == doctest::Approx(7.088e-5).epsilon(1e-3));
  CHECK(analytic::t_min_III_large_nu(0, 0.02) == doctest::Approx(0.01));
  CHECK(analytic::t_min_III_large_nu(0, 0.02) == analytic::t_min_ng_III(0.02));
  CHECK_THROWS_AS(analytic::t_min_I_II(1, 0.23, 1e-5), InfeasibleError);
}
