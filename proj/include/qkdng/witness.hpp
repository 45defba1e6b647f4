#pragma once

#include <vector>

#include "qkdng/click_stats.hpp"

namespace qkdng {

/// One point of the parametric non-Gaussianity boundary.
struct NGBoundaryPoint {
  double V = 0.0;
  double n_of_V = 0.0;
  double p_s = 0.0;
  double p_c = 0.0;
  /// 1 - V, kept separately because V is within 1e-9 of 1 near the origin.
  double gap = 0.0;
};

/// Largest coincidence probability a classical state can show at the given
/// single-click probability: the smaller root of P_S = 2 (sqrt(P_C) - P_C).
/// Domain P_S in [0, 1/2].
double nc_boundary(double p_s);

/// n(V) = (1 - V^2)(V + 3) / (V (3V + 1)).
double n_of_v(double v);

/// Precomputed non-Gaussianity boundary P_C(P_S).
///
/// Solving the two boundary equations for (P_S, P_C) at fixed V gives
/// P_S = 2 (R1 - R2) and P_C = 1 - 2 R1 + R2.  Along V -> 1 both right-hand
/// sides tend to 1 and P_C shrinks like P_S^3 / 2, so the curve is evaluated
/// in quad precision.  P_S(V) rises monotonically from the origin as V falls
/// from 1 until a turning point near V = 0.3; the boundary is the branch
/// between V = 1 and that turning point.
///
/// Immutable after construction; safe to share between threads.
class NgBoundary {
 public:
  explicit NgBoundary(int num_points = 512);

  /// Table sorted by increasing P_S.
  const std::vector<NGBoundaryPoint>& curve() const { return curve_; }
  double min_p_s() const { return curve_.front().p_s; }
  double max_p_s() const { return curve_.back().p_s; }

  /// Boundary P_C at the given P_S: table lookup, then root refinement on
  /// the V parametrization until P_S matches to 1e-13 relative.  Throws
  /// OutOfSpanError outside [min_p_s, max_p_s].
  double operator()(double p_s) const;

  /// The 512-point curve, built on first use.
  static const NgBoundary& shared();

 private:
  std::vector<NGBoundaryPoint> curve_;
};

/// Evaluates the boundary system at V = 1 - gap.
NGBoundaryPoint ng_boundary_at_gap(double gap);

std::vector<NGBoundaryPoint> ng_boundary_curve(int num_points);

/// Convenience wrapper around NgBoundary::shared().
double ng_boundary(double p_s);

/// Strict P_C < boundary(P_S); points on a boundary do not pass.
bool is_nonclassical(const ClickStats& stats);
bool is_nongaussian(const ClickStats& stats, const NgBoundary& boundary = NgBoundary::shared());

/// omega_1^2 / 2 > omega_2+ and omega_1^3 > omega_2+, valid when
/// omega_2+ << omega_1.
bool simplified_nc(double omega_one, double omega_two_plus);
bool simplified_ng(double omega_one, double omega_two_plus);

/// Autocorrelation statistics read out through detectors that add
/// independent dark counts with probability d per gate.
ClickStats apply_detector_darkcounts(const ClickStats& stats, double d);

}  // namespace qkdng
