#pragma once

#include <cstdint>
#include <functional>

namespace qkdng {

enum class PhotonLaw { Thermal, Poisson };

/// Truncation rule for the infinite photon-number sums.
struct SeriesPolicy {
  double abs_tail_tol = 1e-14;
  int max_terms = 4096;

  void validate() const;
};

/// Single-mode photon-number law with a given mean per pulse.
///
/// Thermal is the Bose-Einstein law mu^n / (1+mu)^(n+1); Poisson is
/// e^-mu mu^n / n!.  Both families are closed under binomial thinning, which
/// is what makes the loss kernels below expressible in closed form.
class PhotonDistribution {
 public:
  PhotonDistribution(PhotonLaw law, double mean);

  static PhotonDistribution thermal(double mean) { return {PhotonLaw::Thermal, mean}; }
  static PhotonDistribution poisson(double mean) { return {PhotonLaw::Poisson, mean}; }

  PhotonLaw law() const { return law_; }
  double mean() const { return mean_; }

  double pmf(std::int64_t n) const;

  /// Upper bound on P(N > n).  Exact for the thermal law; factorial majorant
  /// for Poisson.
  double tail_bound(std::int64_t n) const;

  /// Law of the photons kept when each is independently kept with
  /// probability `keep`.
  PhotonDistribution thinned(double keep) const;

 private:
  PhotonLaw law_;
  double mean_;
};

double pmf(const PhotonDistribution& dist, std::int64_t n);

/// Probability that k of the source photons are routed into the detection
/// arm when each photon independently takes that arm with probability 1-T:
///   pi_k(T) = sum_{n>=k} p_n C(n,k) (1-T)^k T^(n-k).
/// Closed form via thinning.
double pi_k(const PhotonDistribution& dist, double transmittance, std::int64_t k);

/// Same quantity by direct truncated summation of the defining series.
double pi_k_series(const PhotonDistribution& dist, double transmittance, std::int64_t k,
                   const SeriesPolicy& policy = {});

/// sum_n pmf(n) f(n) truncated once the tail mass falls below the policy
/// tolerance.  f must be bounded by 1 in magnitude.
double expectation(const PhotonDistribution& dist, const std::function<double(std::int64_t)>& f,
                   const SeriesPolicy& policy = {});

double binomial_coefficient(std::int64_t n, std::int64_t k);

/// C(n,j) x^j (1-x)^(n-j), with 0^0 = 1.
double binomial_term(std::int64_t n, std::int64_t j, double x);

/// At least one of i photons survives a channel of transmittance T.
double t_i(double transmittance, std::int64_t i);
/// Survivors of an i-photon pulse all land on one particular detector of a
/// polarizing splitter, averaged over a uniformly random noise polarization.
double r_i(double transmittance, std::int64_t i);
/// Survivors of an i-photon pulse all land on one particular output of a
/// 50:50 splitter.
double s_i(double transmittance, std::int64_t i);
/// Kernel of the heralded-source single-click sum; the j = 0 term is present
/// only when k + l >= 1.
double u_i(double transmittance, std::int64_t i, std::int64_t k, std::int64_t l);

/// sum_{j>=1} P(j) / (j+1): with a uniformly random polarization split, the
/// probability that all j >= 1 photons reach one particular detector.
double same_detector_share(const PhotonDistribution& dist);

/// P(N >= 2) for Poisson(mean) without cancellation at small mean.
double poisson_at_least_two(double mean);

/// Summary of a (possibly unnormalized) photon-count measure at the points an
/// ideal on/off measurement behind a 50:50 splitter depends on.  With
/// generating function G: `mass` = G(1), `none` = G(0), `half` = G(1/2).
/// The differences are stored separately and combined without subtraction so
/// that coincidence probabilities of order 1e-20 stay accurate.
struct ArrivalLaw {
  double mass = 1.0;
  double none = 1.0;          // P(N = 0)
  double one = 0.0;           // P(N = 1)
  double at_least_one = 0.0;  // mass - none
  double at_least_two = 0.0;  // mass - none - one
  double half = 1.0;          // G(1/2)
  double above_half = 0.0;    // G(1) - G(1/2)
  double below_half = 0.0;    // G(1/2) - G(0)
  double curvature = 0.0;     // G(1) + G(0) - 2 G(1/2)

  static ArrivalLaw vacuum();
  static ArrivalLaw bernoulli(double prob);
  static ArrivalLaw of(const PhotonDistribution& dist);
  /// Signal photons reaching the receiver from an ideally heralded source
  /// with Poisson(pairs_mean) pairs per pulse.  Unnormalized: mass is the
  /// herald probability 1 - e^-nu.
  static ArrivalLaw heralded_poisson(double pairs_mean, double transmittance);

  /// Law of the total count of two independent contributions.
  friend ArrivalLaw operator*(const ArrivalLaw& a, const ArrivalLaw& b);
};

}  // namespace qkdng
