#include "qkdng/witness.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdng/error.hpp"
#include "validate.hpp"

namespace qkdng {

namespace {

using quad = __float128;

constexpr double kMinGap = 1e-9;  // P_S ~ 5e-10, P_C ~ 6e-29: still ~5 digits in quad
constexpr double kRefineTolerance = 1e-13;

struct QuadPoint {
  quad p_s;
  quad p_c;
};

QuadPoint solve_at_gap(double gap) {
  const quad eps = gap;
  const quad v = 1 - eps;
  const quad n = eps * (2 - eps) * (v + 3) / (v * (3 * v + 1));
  const quad root_v = sqrtq(v);
  const quad r1 = 4 * root_v * expq(-n / (6 + 2 * v)) / sqrtq((3 * v + 1) * (3 + v));
  const quad r2 = 2 * root_v * expq(-n / (2 + 2 * v)) / (v + 1);
  return {2 * (r1 - r2), 1 - 2 * r1 + r2};
}

// Gap at which P_S(V) turns back, by golden-section search.
double turning_gap() {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.3;
  double hi = 0.95;
  auto p_s = [](double gap) { return static_cast<double>(solve_at_gap(gap).p_s); };
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = p_s(x1);
  double f2 = p_s(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = p_s(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = p_s(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double nc_boundary(double p_s) {
  if (!(p_s >= 0.0 && p_s <= 0.5)) {
    throw DomainError("nonclassicality boundary needs P_S in [0, 1/2], got " + std::to_string(p_s));
  }
  // ((1 - sqrt(1 - 2 P_S)) / 2)^2 without the cancellation at small P_S.
  const double root = p_s / (1.0 + std::sqrt(1.0 - 2.0 * p_s));
  return root * root;
}

double n_of_v(double v) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("V must lie in (0,1)");
  return (1.0 - v * v) * (v + 3.0) / (v * (3.0 * v + 1.0));
}

NGBoundaryPoint ng_boundary_at_gap(double gap) {
  if (!(gap > 0.0 && gap < 1.0)) throw DomainError("1 - V must lie in (0,1)");
  const QuadPoint q = solve_at_gap(gap);
  NGBoundaryPoint point;
  point.gap = gap;
  point.V = 1.0 - gap;
  point.n_of_V = static_cast<double>(quad(gap) * (2 - quad(gap)) * (4 - quad(gap)) /
                                     ((1 - quad(gap)) * (4 - 3 * quad(gap))));
  point.p_s = static_cast<double>(q.p_s);
  point.p_c = static_cast<double>(q.p_c);
  return point;
}

std::vector<NGBoundaryPoint> ng_boundary_curve(int num_points) {
  if (num_points < 16) throw DomainError("the boundary curve needs at least 16 points");
  const double log_lo = std::log(kMinGap);
  const double log_hi = std::log(turning_gap());
  std::vector<NGBoundaryPoint> curve;
  curve.reserve(static_cast<std::size_t>(num_points));
  for (int j = 0; j < num_points; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(num_points - 1);
    const NGBoundaryPoint point = ng_boundary_at_gap(std::exp(log_lo + t * (log_hi - log_lo)));
    const bool inside = point.p_s > 0.0 && point.p_s <= 1.0 && point.p_c >= 0.0 && point.p_c <= 1.0;
    if (!inside) continue;
    if (!curve.empty() && point.p_s <= curve.back().p_s) continue;
    curve.push_back(point);
  }
  if (curve.size() < 2) throw InfeasibleError("non-Gaussianity boundary curve is degenerate");
  return curve;
}

NgBoundary::NgBoundary(int num_points) : curve_(ng_boundary_curve(num_points)) {}

double NgBoundary::operator()(double p_s) const {
  if (!(p_s >= min_p_s() && p_s <= max_p_s())) {
    throw OutOfSpanError("P_S = " + std::to_string(p_s) +
                         " outside the tabulated non-Gaussianity boundary");
  }
  auto upper = std::lower_bound(curve_.begin(), curve_.end(), p_s,
                                [](const NGBoundaryPoint& pt, double v) { return pt.p_s < v; });
  if (upper->p_s == p_s) return upper->p_c;
  const auto lower = std::prev(upper);

  // Illinois iteration on log P_S(log gap) = log target inside the bracket.
  const quad log_target = logq(quad(p_s));
  auto residual = [&](double log_gap) {
    return static_cast<double>(logq(solve_at_gap(std::exp(log_gap)).p_s) - log_target);
  };
  double a = std::log(lower->gap);
  double b = std::log(upper->gap);
  double fa = std::log(lower->p_s) - std::log(p_s);
  double fb = std::log(upper->p_s) - std::log(p_s);
  double x = b;
  for (int iter = 0; iter < 100; ++iter) {
    x = b - fb * (b - a) / (fb - fa);
    const double fx = residual(x);
    if (std::abs(fx) <= kRefineTolerance) break;
    if ((fx < 0.0) != (fb < 0.0)) {
      a = b;
      fa = fb;
    } else {
      fa /= 2.0;
    }
    b = x;
    fb = fx;
  }
  return static_cast<double>(solve_at_gap(std::exp(x)).p_c);
}

const NgBoundary& NgBoundary::shared() {
  static const NgBoundary boundary(512);
  return boundary;
}

double ng_boundary(double p_s) { return NgBoundary::shared()(p_s); }

bool is_nonclassical(const ClickStats& stats) { return stats.p_c < nc_boundary(stats.p_s); }

bool is_nongaussian(const ClickStats& stats, const NgBoundary& boundary) {
  return stats.p_c < boundary(stats.p_s);
}

bool simplified_nc(double omega_one, double omega_two_plus) {
  return omega_one * omega_one / 2.0 > omega_two_plus;
}

bool simplified_ng(double omega_one, double omega_two_plus) {
  return omega_one * omega_one * omega_one > omega_two_plus;
}

ClickStats apply_detector_darkcounts(const ClickStats& stats, double d) {
  detail::require_dark_count(d);
  ClickStats out;
  out.p_c = stats.p_c + stats.p_s * d + stats.p_none * d * d;
  out.p_s = stats.p_s * (1.0 - d) + 2.0 * stats.p_none * d * (1.0 - d);
  out.p_none = stats.p_none * (1.0 - d) * (1.0 - d);
  return out;
}

}  // namespace qkdng
