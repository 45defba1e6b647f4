#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qkdng/models.hpp"

namespace qkdng {

enum class Geometry { Key, Autocorrelation };

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  /// Pulses per RNG substream.  Results depend on the seed and block size
  /// only, never on the worker count.
  std::uint64_t block_size = 1u << 16;
  unsigned workers = 0;

  void validate() const;
};

struct McEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;
};

using McResult = std::map<std::string, McEstimate>;

/// Event-by-event simulation of the model.
///
/// Key geometry yields "p_exp", "qber" (over accepted events) and, for the
/// heralded source, "p_multi"; the noise-before model also reports
/// "same_detector_j" for j = 1..3, the fraction of pulses with j surviving
/// noise photons that all reach one detector.  The autocorrelation geometry
/// yields "p_s", "p_c", "p_none", "omega_0", "omega_1", "omega_2plus".
/// Heralded-source estimates are per heralded pulse.
McResult simulate(const ModelParams& params, const McConfig& config, Geometry geometry);

struct McComparison {
  std::string name;
  double analytic = 0.0;
  double mc = 0.0;
  /// Binomial standard error evaluated at the analytic value.
  double std_err = 0.0;
  /// |analytic - mc| / std_err.
  double sigma = 0.0;
  std::uint64_t samples = 0;
};

/// Runs both geometries and pairs every estimate with its closed-form value.
std::vector<McComparison> compare_with_analytic(const ModelParams& params, const McConfig& config);

}  // namespace qkdng
