#pragma once

namespace qkdng {

/// Key-generation figures for one parameter point.
struct KeyRateResult {
  double qber = 0.0;
  /// Fraction of Bob's clicks caused by genuine single-photon pulses.
  double single_photon_fraction = 1.0;
  double p_exp = 0.0;
  /// Secret bits per raw-key bit.
  double delta_i = 0.0;
};

/// Shannon entropy in bits, H(0) = H(1) = 0.
double binary_entropy(double q);

/// max[0, 1 - 2 H(Q)]: single-photon source, collective attacks.
double secret_fraction_ideal(double qber);

/// max[0, y - H(Q) - y H(Q/y)]: multiphoton pulses fully known to the
/// eavesdropper.  Q > y yields zero key.
double secret_fraction_multiphoton(double qber, double single_photon_fraction);

/// Root of 1 - 2 H(Q) on (0, 1/2); about 0.110028.
double qber_threshold();

/// Root y in (e/2, 1] of y [1 - H(e / 2y)] - H(e/2) = 0.  Returns 0 for e = 0
/// (limit of the degenerate equation).  Throws InfeasibleError once
/// e >= 2 qber_threshold().
double y_threshold(double depolarization);

}  // namespace qkdng
