#include "qkdng/photon_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdng/error.hpp"

namespace qkdng {

namespace {

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
  }
}

void require_count(std::int64_t n, const char* name) {
  if (n < 0) throw DomainError(std::string(name) + " must be nonnegative");
}

double log_factorial(std::int64_t n) {
  int sign = 0;
  return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

}  // namespace

void SeriesPolicy::validate() const {
  if (!(abs_tail_tol > 0.0)) throw DomainError("SeriesPolicy: abs_tail_tol must be positive");
  if (max_terms < 16) throw DomainError("SeriesPolicy: max_terms must be at least 16");
}

PhotonDistribution::PhotonDistribution(PhotonLaw law, double mean) : law_(law), mean_(mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("photon distribution mean must be finite and nonnegative");
  }
}

double PhotonDistribution::pmf(std::int64_t n) const {
  require_count(n, "photon number");
  if (mean_ == 0.0) return n == 0 ? 1.0 : 0.0;
  const double dn = static_cast<double>(n);
  switch (law_) {
    case PhotonLaw::Thermal:
      return std::exp(dn * std::log(mean_) - (dn + 1.0) * std::log1p(mean_));
    case PhotonLaw::Poisson:
      return std::exp(-mean_ + dn * std::log(mean_) - log_factorial(n));
  }
  return 0.0;
}

double PhotonDistribution::tail_bound(std::int64_t n) const {
  if (mean_ == 0.0) return 0.0;
  switch (law_) {
    case PhotonLaw::Thermal:
      return std::pow(mean_ / (1.0 + mean_), static_cast<double>(n) + 1.0);
    case PhotonLaw::Poisson: {
      // p_{n+k+1} <= p_{n+1} (mu/(n+2))^k, a geometric majorant once n+2 > mu.
      const double ratio = mean_ / (static_cast<double>(n) + 2.0);
      if (ratio >= 1.0) return 1.0;
      return pmf(n + 1) / (1.0 - ratio);
    }
  }
  return 1.0;
}

PhotonDistribution PhotonDistribution::thinned(double keep) const {
  require_probability(keep, "keep probability");
  return {law_, mean_ * keep};
}

double pmf(const PhotonDistribution& dist, std::int64_t n) { return dist.pmf(n); }

double pi_k(const PhotonDistribution& dist, double transmittance, std::int64_t k) {
  require_probability(transmittance, "transmittance");
  require_count(k, "k");
  return dist.thinned(1.0 - transmittance).pmf(k);
}

double pi_k_series(const PhotonDistribution& dist, double transmittance, std::int64_t k,
                   const SeriesPolicy& policy) {
  require_probability(transmittance, "transmittance");
  require_count(k, "k");
  policy.validate();
  const double arm = 1.0 - transmittance;
  double sum = 0.0;
  for (std::int64_t n = k; n < k + policy.max_terms; ++n) {
    sum += dist.pmf(n) * binomial_term(n, k, arm);
    if (dist.tail_bound(n) < policy.abs_tail_tol) return sum;
  }
  throw ConvergenceError("pi_k series exceeded max_terms");
}

double expectation(const PhotonDistribution& dist, const std::function<double(std::int64_t)>& f,
                   const SeriesPolicy& policy) {
  policy.validate();
  double sum = 0.0;
  for (std::int64_t n = 0; n < policy.max_terms; ++n) {
    sum += dist.pmf(n) * f(n);
    if (dist.tail_bound(n) < policy.abs_tail_tol) return sum;
  }
  throw ConvergenceError("photon-number expectation exceeded max_terms");
}

double binomial_coefficient(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::int64_t j = 1; j <= k; ++j) {
    c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return c;
}

double binomial_term(std::int64_t n, std::int64_t j, double x) {
  if (j < 0 || j > n) return 0.0;
  if (x == 0.0) return j == 0 ? 1.0 : 0.0;
  if (x == 1.0) return j == n ? 1.0 : 0.0;
  if (n <= 50) {
    return binomial_coefficient(n, j) * std::pow(x, static_cast<double>(j)) *
           std::pow(1.0 - x, static_cast<double>(n - j));
  }
  const double log_c = log_factorial(n) - log_factorial(j) - log_factorial(n - j);
  return std::exp(log_c + static_cast<double>(j) * std::log(x) +
                  static_cast<double>(n - j) * std::log1p(-x));
}

double t_i(double transmittance, std::int64_t i) {
  require_probability(transmittance, "transmittance");
  require_count(i, "i");
  if (i == 0) return 0.0;
  if (transmittance == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(i) * std::log1p(-transmittance));
}

double r_i(double transmittance, std::int64_t i) {
  require_probability(transmittance, "transmittance");
  require_count(i, "i");
  double sum = 0.0;
  for (std::int64_t j = 1; j <= i; ++j) {
    sum += binomial_term(i, j, transmittance) / static_cast<double>(j + 1);
  }
  return sum;
}

double s_i(double transmittance, std::int64_t i) {
  require_probability(transmittance, "transmittance");
  require_count(i, "i");
  double sum = 0.0;
  for (std::int64_t j = 1; j <= i; ++j) {
    sum += binomial_term(i, j, transmittance) * std::ldexp(1.0, -static_cast<int>(j));
  }
  return sum;
}

double u_i(double transmittance, std::int64_t i, std::int64_t k, std::int64_t l) {
  require_probability(transmittance, "transmittance");
  require_count(i, "i");
  require_count(k, "k");
  require_count(l, "l");
  const std::int64_t first = k + l >= 1 ? 0 : 1;
  double sum = 0.0;
  for (std::int64_t j = first; j <= i; ++j) {
    sum += binomial_term(i, j, transmittance) * std::ldexp(1.0, -static_cast<int>(j));
  }
  return sum;
}

double poisson_at_least_two(double mean) {
  if (!(mean >= 0.0)) throw DomainError("Poisson mean must be nonnegative");
  if (mean >= 1.0) return 1.0 - std::exp(-mean) * (1.0 + mean);
  double term = mean * mean / 2.0;
  double sum = 0.0;
  for (int k = 2; k < 64 && term > 1e-18 * sum; ++k) {
    sum += term;
    term *= mean / static_cast<double>(k + 1);
  }
  return std::exp(-mean) * sum;
}

double same_detector_share(const PhotonDistribution& dist) {
  const double c = dist.mean();
  if (c == 0.0) return 0.0;
  if (dist.law() == PhotonLaw::Poisson) return poisson_at_least_two(c) / c;

  const double q = c / (1.0 + c);
  if (q >= 0.5) return (1.0 - q) * (std::log1p(c) - q) / q;
  // (1-q) sum_{j>=1} q^j / (j+1)
  double power = q;
  double sum = 0.0;
  for (int j = 1; j < 128; ++j) {
    const double term = power / static_cast<double>(j + 1);
    sum += term;
    if (term < 1e-18 * sum) break;
    power *= q;
  }
  return (1.0 - q) * sum;
}

ArrivalLaw ArrivalLaw::vacuum() { return ArrivalLaw{}; }

ArrivalLaw ArrivalLaw::bernoulli(double prob) {
  require_probability(prob, "arrival probability");
  ArrivalLaw law;
  law.none = 1.0 - prob;
  law.one = prob;
  law.at_least_one = prob;
  law.half = 1.0 - prob / 2.0;
  law.above_half = prob / 2.0;
  law.below_half = prob / 2.0;
  return law;
}

ArrivalLaw ArrivalLaw::of(const PhotonDistribution& dist) {
  const double m = dist.mean();
  ArrivalLaw law;
  if (m == 0.0) return law;
  switch (dist.law()) {
    case PhotonLaw::Thermal: {
      const double a = 1.0 + m;
      const double b = 1.0 + m / 2.0;
      const double q = m / a;
      law.none = 1.0 / a;
      law.one = q / a;
      law.at_least_one = q;
      law.at_least_two = q * q;
      law.half = 1.0 / b;
      law.above_half = (m / 2.0) / b;
      law.below_half = (m / 2.0) / (a * b);
      law.curvature = (m * m / 2.0) / (a * b);
      break;
    }
    case PhotonLaw::Poisson: {
      const double e0 = std::exp(-m);
      const double half_gap = std::expm1(-m / 2.0);
      law.none = e0;
      law.one = m * e0;
      law.at_least_one = -std::expm1(-m);
      law.at_least_two = poisson_at_least_two(m);
      law.half = std::exp(-m / 2.0);
      law.above_half = -half_gap;
      law.below_half = e0 * std::expm1(m / 2.0);
      law.curvature = half_gap * half_gap;
      break;
    }
  }
  return law;
}

ArrivalLaw ArrivalLaw::heralded_poisson(double pairs_mean, double transmittance) {
  require_probability(transmittance, "transmittance");
  if (!(pairs_mean >= 0.0)) throw DomainError("mean pair number must be nonnegative");
  // Poisson(nu T) arrivals with the unheralded vacuum term e^-nu removed.
  ArrivalLaw law = of(PhotonDistribution::poisson(pairs_mean * transmittance));
  const double drop = std::exp(-pairs_mean);
  law.mass = -std::expm1(-pairs_mean);
  law.none = drop * std::expm1(pairs_mean * (1.0 - transmittance));
  law.half = drop * std::expm1(pairs_mean * (1.0 - transmittance / 2.0));
  return law;
}

ArrivalLaw operator*(const ArrivalLaw& a, const ArrivalLaw& b) {
  ArrivalLaw u;
  u.mass = a.mass * b.mass;
  u.none = a.none * b.none;
  u.one = a.none * b.one + a.one * b.none;
  u.at_least_one = a.at_least_one * b.mass + a.none * b.at_least_one;
  u.at_least_two = a.at_least_two * b.mass + a.one * b.at_least_one + a.none * b.at_least_two;
  u.half = a.half * b.half;
  u.above_half = a.mass * b.above_half + b.half * a.above_half;
  u.below_half = a.half * b.below_half + b.none * a.below_half;
  u.curvature = a.half * b.curvature + b.half * a.curvature + a.above_half * b.above_half +
                a.below_half * b.below_half;
  return u;
}

}  // namespace qkdng
