#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qkdng/models.hpp"
#include "qkdng/witness.hpp"

namespace qkdng {

enum class Criterion { Security, Nonclassical, NonGaussian };

std::string_view to_string(Criterion criterion);
/// Accepts "security", "nc"/"nonclassical" and "ng"/"nongaussian".
std::optional<Criterion> parse_criterion(std::string_view name);

struct SolverOptions {
  double rel_tol = 1e-6;
  double mu_start = 1e-12;
  double mu_ceiling = 1e3;
  double mu_floor = 1e-30;
  /// ΔI must exceed this for a point to count as secure.
  double security_margin = 1e-12;
  /// Dark-count probability of the autocorrelation detectors; 0 means ideal
  /// detectors.
  double witness_dark_count = 0.0;
  int fallback_scan_points = 200;
  /// Sweep workers; 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;

  void validate() const;
};

/// Whether the criterion holds at this parameter point.  Points where the
/// rate is undefined, or where the click statistics fall outside a witness
/// boundary's domain, do not pass; the one exception is P_S > 1/2, which no
/// classical state reaches and so counts as nonclassical.
bool criterion_holds(Criterion criterion, const ModelParams& params,
                     const SolverOptions& options = {},
                     const NgBoundary& boundary = NgBoundary::shared());

struct MuMaxResult {
  double mu_max = 0.0;
  bool feasible = false;
  /// Still passing at the search ceiling; mu_max is the ceiling.
  bool capped = false;
  /// The monotonicity probe failed and the dense scan was used.
  bool fallback_used = false;
};

/// Largest noise mean at which the criterion holds, at params.T and the
/// other fixed parameters (params.mu is ignored).
MuMaxResult mu_max_numeric(Criterion criterion, const ModelParams& params,
                           const SolverOptions& options = {},
                           const NgBoundary& boundary = NgBoundary::shared());

struct BoundaryPoint {
  double T = 0.0;
  MuMaxResult result;
};

struct BoundaryCurve {
  Model model = Model::ThermalBath;
  Criterion criterion = Criterion::Security;
  ModelParams meta;
  std::vector<BoundaryPoint> points;

  std::size_t feasible_count() const;
};

/// One mu_max_numeric per grid point, evaluated in parallel.  The grid must
/// be strictly increasing inside (0, 1].
BoundaryCurve sweep(Criterion criterion, const ModelParams& params, const std::vector<double>& t_grid,
                    const SolverOptions& options = {});

struct TminResult {
  double t_min = 0.0;
  bool feasible = false;
  /// Secure all the way down to the search floor; t_min is the floor.
  bool reaches_floor = false;
};

/// Smallest transmittance that is secure without channel noise.
TminResult t_min_numeric(const ModelParams& params, const SolverOptions& options = {},
                         double t_floor = 1e-12);

/// count points from lo to hi inclusive, geometric or arithmetic.
std::vector<double> make_grid(double lo, double hi, int count, bool logarithmic);

}  // namespace qkdng
