#include <doctest.h>

#include <cmath>
#include <random>

#include "qkdng/error.hpp"
#include "qkdng/witness.hpp"
#include "reference.hpp"

using namespace qkdng;

TEST_CASE("classical boundary") {
  CHECK(nc_boundary(0.5) == 0.25);
  CHECK(nc_boundary(0.0) == 0.0);
  for (double ps : {1e-8, 1e-6, 1e-4}) CHECK(nc_boundary(ps) / (ps * ps) == doctest::Approx(0.25).epsilon(1e-3));
  for (int i = 1; i <= 100; ++i) {
    const double ps = 0.5 * i / 100.0;
    const double pc = nc_boundary(ps);
    CHECK(pc == doctest::Approx(ref::nc_root(ps)).epsilon(1e-12));
    CHECK(2 * (std::sqrt(pc) - pc) == doctest::Approx(ps).epsilon(1e-12));
  }
  CHECK_THROWS_AS(nc_boundary(0.5000001), DomainError);
  CHECK_THROWS_AS(nc_boundary(-1e-3), DomainError);
}

TEST_CASE("n(V)") {
  CHECK(n_of_v(1.0 - 1e-12) < 1e-11);
  CHECK_THROWS_AS(n_of_v(1.0), DomainError);
  CHECK(n_of_v(0.5) == doctest::Approx(0.75 * 3.5 / (0.5 * 2.5)));
}

TEST_CASE("non-Gaussian curve: shape and span") {
  const auto& boundary = NgBoundary::shared();
  const auto& curve = boundary.curve();
  REQUIRE(curve.size() >= 16);
  CHECK(boundary.min_p_s() < 1e-8);
  CHECK(boundary.max_p_s() > 0.59);
  CHECK(boundary.max_p_s() < 0.6);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].p_s > curve[i - 1].p_s);
    CHECK(curve[i].p_c >= curve[i - 1].p_c);
    CHECK(curve[i].p_c >= 0.0);
    CHECK(curve[i].p_c <= 1.0);
  }
  const auto near = ng_boundary_at_gap(1e-12);
  CHECK(near.p_s < 1e-5);
  CHECK(near.p_c < 1e-15);
  CHECK_THROWS_AS(ng_boundary_curve(8), DomainError);
}

TEST_CASE("non-Gaussian boundary matches the 50-digit solution") {
  for (double ps : {1e-6, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double want = ref::ng_boundary(ps);
    CHECK_MESSAGE(ng_boundary(ps) == doctest::Approx(want).epsilon(1e-9), "P_S = ", ps);
  }
}

TEST_CASE("non-Gaussian boundary is strictly below the classical one") {
  for (int i = 1; i <= 100; ++i) {
    const double ps = std::pow(10.0, -6.0 + 6.0 * i / 100.0) * 0.5;
    const double ng = ng_boundary(ps);
    CHECK(ng > 0.0);
    CHECK(ng < nc_boundary(ps));
  }
  CHECK(ng_boundary(1e-3) > 0.0);
  CHECK(ng_boundary(1e-3) < nc_boundary(1e-3));
}

TEST_CASE("non-Gaussian boundary scales as the cube") {
  const double slope = std::log(ng_boundary(1e-2) / ng_boundary(1e-4)) / std::log(100.0);
  CHECK(slope == doctest::Approx(3.0).epsilon(0.2 / 3.0));
  CHECK(ng_boundary(1e-5) / std::pow(1e-5, 3) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("non-Gaussian boundary outside the span") {
  CHECK_THROWS_AS(ng_boundary(0.7), OutOfSpanError);
  CHECK_THROWS_AS(ng_boundary(-0.1), OutOfSpanError);
}

TEST_CASE("non-Gaussian boundary is deterministic and thread-safe") {
  CHECK(ng_boundary(0.123) == ng_boundary(0.123));
  const NgBoundary fresh(512);
  CHECK(fresh(0.123) == ng_boundary(0.123));
}

TEST_CASE("witness decisions") {
  for (double T : {0.01, 0.2, 0.5}) {
    const ClickStats s{T, 0.0, 1.0 - T};
    CHECK(is_nonclassical(s));
    CHECK(is_nongaussian(s));
  }
  {
    const double ps = 1e-5, pc = ps * ps / 4 * (1 + 1e-3);
    CHECK_FALSE(is_nonclassical({ps, pc, 1 - ps - pc}));
  }
  for (double ps : {1e-4, 1e-3, 1e-2}) {
    const double above = nc_boundary(ps) * (1 + 1e-9);
    CHECK_FALSE(is_nonclassical({ps, above, 1 - ps - above}));
    const double on = nc_boundary(ps);
    CHECK_FALSE(is_nonclassical({ps, on, 1 - ps - on}));
    const double ng = ng_boundary(ps);
    CHECK_FALSE(is_nongaussian({ps, ng, 1 - ps - ng}));
    CHECK(is_nongaussian({ps, ng * 0.999, 1 - ps - ng * 0.999}));
  }
}

TEST_CASE("simplified criteria") {
  CHECK(simplified_nc(0.1, 0.0));
  CHECK(simplified_ng(0.1, 0.0));
  CHECK(simplified_nc(0.1, 0.004));
  CHECK_FALSE(simplified_ng(0.1, 0.004));
  CHECK_FALSE(simplified_nc(0.1, 0.006));
  CHECK_FALSE(simplified_ng(0.1, 0.006));
}

TEST_CASE("detector dark counts") {
  const ClickStats s{0.3, 0.01, 0.69};
  const auto same = apply_detector_darkcounts(s, 0.0);
  CHECK(same.p_s == s.p_s);
  CHECK(same.p_c == s.p_c);
  CHECK(same.p_none == s.p_none);

  const double d = 1e-3;
  const auto dark = apply_detector_darkcounts({0, 0, 1}, d);
  CHECK(dark.p_c == doctest::Approx(d * d));
  CHECK(dark.p_s == doctest::Approx(2 * d * (1 - d)));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    double a = u(rng), b = u(rng), c = u(rng);
    const double total = a + b + c;
    const ClickStats in{a / total, b / total, c / total};
    const double dd = 0.5 * u(rng);
    const auto out = apply_detector_darkcounts(in, dd);
    CHECK(out.p_s + out.p_c + out.p_none == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(out.p_c >= in.p_c);
    if (in.p_none > 0 && dd > 0) CHECK(out.p_c > in.p_c);
  }
  CHECK_THROWS_AS(apply_detector_darkcounts(s, 1.0), DomainError);
}
