#include <doctest.h>

#include <cmath>

#include "qkdng/error.hpp"
#include "qkdng/photon_stats.hpp"
#include "reference.hpp"

using namespace qkdng;

TEST_CASE("pmf values and normalization") {
  CHECK(pmf(PhotonDistribution::thermal(0.0), 0) == 1.0);
  CHECK(pmf(PhotonDistribution::thermal(0.0), 3) == 0.0);
  CHECK(pmf(PhotonDistribution::thermal(1.0), 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pmf(PhotonDistribution::thermal(1.0), 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pmf(PhotonDistribution::poisson(1.0), 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  for (double mean : {0.01, 0.3, 1.0, 5.0}) {
    for (auto dist : {PhotonDistribution::thermal(mean), PhotonDistribution::poisson(mean)}) {
      double total = 0.0;
      for (int n = 0; n < 2000; ++n) total += dist.pmf(n);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("pmf is stable far into the tail") {
  const auto thermal = PhotonDistribution::thermal(2.0);
  const auto poisson = PhotonDistribution::poisson(2.0);
  for (int n : {500, 1500, 4095}) {
    CHECK(std::isfinite(thermal.pmf(n)));
    CHECK(thermal.pmf(n) >= 0.0);
    CHECK(poisson.pmf(n) >= 0.0);
  }
  CHECK(poisson.pmf(4095) == 0.0);
  CHECK(std::log(thermal.pmf(1500)) ==
        doctest::Approx(1500 * std::log(2.0) - 1501 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("negative mean is a domain error") {
  CHECK_THROWS_AS(PhotonDistribution::thermal(-0.1), DomainError);
  CHECK_THROWS_AS(PhotonDistribution::poisson(-1.0), DomainError);
  CHECK_THROWS_AS(pmf(PhotonDistribution::thermal(0.1), -1), DomainError);
}

TEST_CASE("pi_k examples") {
  const auto bath = PhotonDistribution::thermal(0.1);
  CHECK(pi_k(bath, 1.0, 0) == 1.0);
  CHECK(pi_k(bath, 1.0, 2) == 0.0);
  CHECK(pi_k(bath, 0.5, 0) == doctest::Approx(1.0 / 1.05).epsilon(1e-14));
  CHECK(pi_k(bath, 0.0, 1) == doctest::Approx(0.1 / (1.1 * 1.1)).epsilon(1e-14));
}

TEST_CASE("closed-form pi_k agrees with the truncated series") {
  for (double mu : {1e-6, 0.01, 0.1, 0.3, 1.0, 4.0}) {
    for (double T : {0.0, 1e-3, 0.1, 0.5, 0.9, 1.0}) {
      for (int k = 0; k < 6; ++k) {
        const auto bath = PhotonDistribution::thermal(mu);
        const double closed = pi_k(bath, T, k);
        CHECK(std::abs(closed - pi_k_series(bath, T, k)) < 1e-12);
        CHECK(std::abs(closed - static_cast<double>(ref::pi_k(mu, T, k))) < 1e-12);
        const auto light = PhotonDistribution::poisson(mu);
        CHECK(std::abs(pi_k(light, T, k) - pi_k_series(light, T, k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("pi_k sums to one") {
  for (double T : {0.0, 0.3, 0.9}) {
    const auto bath = PhotonDistribution::thermal(0.7);
    double total = 0.0;
    for (int k = 0; k < 400; ++k) total += pi_k(bath, T, k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("kernel examples") {
  CHECK(t_i(0.3, 1) == doctest::Approx(0.3));
  CHECK(t_i(0.3, 2) == doctest::Approx(0.51).epsilon(1e-15));
  CHECK(t_i(1.0, 5) == 1.0);
  CHECK(t_i(0.4, 0) == 0.0);

  CHECK(r_i(0.4, 1) == doctest::Approx(0.2));
  CHECK(r_i(1.0, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(r_i(0.0, 7) == 0.0);

  CHECK(s_i(0.4, 1) == doctest::Approx(0.2));
  CHECK(s_i(1.0, 2) == doctest::Approx(0.25));
  CHECK(s_i(0.0, 7) == 0.0);

  CHECK(u_i(0.3, 0, 1, 0) == 1.0);
  CHECK(u_i(0.3, 1, 0, 0) == doctest::Approx(0.15));
  CHECK(u_i(0.0, 2, 1, 1) == 1.0);
}

TEST_CASE("kernels agree with the reference sums and stay ordered") {
  for (int i = 1; i <= 20; ++i) {
    double previous_t = -1.0;
    for (int step = 0; step <= 10; ++step) {
      const double T = step / 10.0;
      const double t = t_i(T, i), r = r_i(T, i), s = s_i(T, i);
      CHECK(std::abs(t - static_cast<double>(ref::t_i(T, i))) < 1e-13);
      CHECK(std::abs(r - static_cast<double>(ref::r_i(T, i))) < 1e-13);
      CHECK(std::abs(s - static_cast<double>(ref::s_i(T, i))) < 1e-13);
      CHECK(r >= 0.0);
      CHECK(s >= 0.0);
      CHECK(r <= t + 1e-15);
      CHECK(s <= t + 1e-15);
      CHECK(t <= 1.0);
      CHECK(t >= previous_t);
      previous_t = t;
    }
  }
}

TEST_CASE("same-detector share and the two-photon Poisson tail") {
  for (double c : {1e-8, 1e-3, 0.2, 0.9, 1.0, 3.0, 50.0}) {
    for (bool thermal : {true, false}) {
      const PhotonDistribution dist(thermal ? PhotonLaw::Thermal : PhotonLaw::Poisson, c);
      double series = 0.0;
      for (int j = 1; j < 3000; ++j) series += dist.pmf(j) / (j + 1.0);
      CHECK(same_detector_share(dist) == doctest::Approx(series).epsilon(1e-12));
    }
    const double tail = 1.0 - std::exp(-c) * (1.0 + c);
    if (c > 0.1) CHECK(poisson_at_least_two(c) == doctest::Approx(tail).epsilon(1e-12));
  }
  CHECK(poisson_at_least_two(1e-8) == doctest::Approx(0.5e-16).epsilon(1e-7));
}

TEST_CASE("arrival-law algebra matches direct enumeration") {
  // Product of a Bernoulli and two thermal modes, enumerated explicitly.
  const double p = 0.37, m = 0.21;
  const ArrivalLaw law = ArrivalLaw::bernoulli(p) * ArrivalLaw::of(PhotonDistribution::thermal(m)) *
                         ArrivalLaw::of(PhotonDistribution::thermal(m));
  const auto th = PhotonDistribution::thermal(m);
  double none = 0, one = 0, single = 0, coincidence = 0;
  for (int s = 0; s <= 1; ++s) {
    for (int a = 0; a < 200; ++a) {
      for (int b = 0; b < 200; ++b) {
        const double w = (s ? p : 1 - p) * th.pmf(a) * th.pmf(b);
        const int n = s + a + b;
        if (n == 0) none += w;
        if (n == 1) one += w;
        if (n >= 1) {
          single += w * std::ldexp(2.0, -n);
          coincidence += w * (1.0 - std::ldexp(2.0, -n));
        }
      }
    }
  }
  CHECK(law.none == doctest::Approx(none).epsilon(1e-13));
  CHECK(law.one == doctest::Approx(one).epsilon(1e-13));
  CHECK(2.0 * law.below_half == doctest::Approx(single).epsilon(1e-13));
  CHECK(law.curvature == doctest::Approx(coincidence).epsilon(1e-12));
  CHECK(law.none + law.one + law.at_least_two == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("SeriesPolicy validation") {
  CHECK_THROWS_AS((SeriesPolicy{0.0, 100}.validate()), DomainError);
  CHECK_THROWS_AS((SeriesPolicy{1e-14, 8}.validate()), DomainError);
  CHECK_NOTHROW(SeriesPolicy{}.validate());
  CHECK_THROWS_AS(pi_k_series(PhotonDistribution::thermal(50.0), 0.0, 0, SeriesPolicy{1e-14, 16}),
                  ConvergenceError);
}
