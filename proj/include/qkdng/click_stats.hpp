#pragma once

#include "qkdng/photon_stats.hpp"

namespace qkdng {

/// Outcome probabilities of the two-detector autocorrelation measurement.
struct ClickStats {
  double p_s = 0.0;     // exactly one detector clicks
  double p_c = 0.0;     // both detectors click
  double p_none = 1.0;  // neither clicks
};

/// Photon-arrival probabilities at the receiver.
struct Omega {
  double one = 0.0;       // exactly one photon arrives
  double two_plus = 0.0;  // more than one photon arrives
};

/// Ideal on/off detectors behind a 50:50 splitter, conditioned on the
/// measure's total mass.
ClickStats click_stats_from(const ArrivalLaw& arrivals);
Omega omega_from(const ArrivalLaw& arrivals);

}  // namespace qkdng
