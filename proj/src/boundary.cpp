#include "qkdng/boundary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "qkdng/bisection.hpp"
#include "qkdng/error.hpp"

namespace qkdng {

namespace {

bool passes(Criterion criterion, const ModelParams& params, const SolverOptions& options,
            const NgBoundary& boundary) {
  try {
    return criterion_holds(criterion, params, options, boundary);
  } catch (const UndefinedRateError&) {
    return false;
  }
}

}  // namespace

std::string_view to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::Security: return "security";
    case Criterion::Nonclassical: return "nc";
    case Criterion::NonGaussian: return "ng";
  }
  return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view name) {
  if (name == "security" || name == "qkd") return Criterion::Security;
  if (name == "nc" || name == "nonclassical") return Criterion::Nonclassical;
  if (name == "ng" || name == "nongaussian") return Criterion::NonGaussian;
  return std::nullopt;
}

void SolverOptions::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0,1)");
  if (!(mu_floor > 0.0 && mu_floor <= mu_start && mu_start < mu_ceiling)) {
    throw DomainError("need 0 < mu_floor <= mu_start < mu_ceiling");
  }
  if (!(security_margin >= 0.0)) throw DomainError("security_margin must be nonnegative");
  if (!(witness_dark_count >= 0.0 && witness_dark_count < 1.0)) {
    throw DomainError("witness dark-count probability must lie in [0,1)");
  }
  if (fallback_scan_points < 8) throw DomainError("fallback_scan_points must be at least 8");
}

bool criterion_holds(Criterion criterion, const ModelParams& params, const SolverOptions& options,
                     const NgBoundary& boundary) {
  if (criterion == Criterion::Security) {
    return key_rate(params).delta_i > options.security_margin;
  }
  ClickStats stats = click_stats(params);
  if (options.witness_dark_count > 0.0) {
    stats = apply_detector_darkcounts(stats, options.witness_dark_count);
  }
  // No classical state reaches P_S > 1/2 (the classical boundary peaks there),
  // so those points pass even though the boundary itself is undefined.
  if (criterion == Criterion::Nonclassical && stats.p_s > 0.5) return true;
  try {
    if (criterion == Criterion::Nonclassical) return is_nonclassical(stats);
    return is_nongaussian(stats, boundary);
  } catch (const DomainError&) {
    return false;
  } catch (const OutOfSpanError&) {
    return false;
  }
}

MuMaxResult mu_max_numeric(Criterion criterion, const ModelParams& params,
                           const SolverOptions& options, const NgBoundary& boundary) {
  options.validate();
  params.with_mu(0.0).validate();
  auto holds = [&](double mu) { return passes(criterion, params.with_mu(mu), options, boundary); };

  MuMaxResult result;
  if (!holds(0.0)) return result;
  result.feasible = true;

  // Bracket [inside, outside] around the boundary.
  double inside = options.mu_start;
  double outside = 0.0;
  if (holds(inside)) {
    outside = inside;
    while (holds(outside)) {
      inside = outside;
      if (outside >= options.mu_ceiling) {
        result.mu_max = options.mu_ceiling;
        result.capped = true;
        return result;
      }
      outside = std::min(2.0 * outside, options.mu_ceiling);
    }
  } else {
    outside = inside;
    inside *= 0.1;
    while (!holds(inside)) {
      if (inside <= options.mu_floor) return result;  // feasible only at mu = 0
      outside = inside;
      inside *= 0.1;
    }
  }

  // Monotonicity probe on the span already walked.
  const double log_lo = std::log(std::min(options.mu_start, inside));
  const double log_hi = std::log(outside);
  bool seen_fail = false;
  bool monotone = true;
  for (double frac : {0.25, 0.5, 0.75}) {
    const double mu = std::exp(log_lo + frac * (log_hi - log_lo));
    const bool ok = holds(mu);
    if (ok && seen_fail) monotone = false;
    if (!ok) seen_fail = true;
    if (mu > inside && mu < outside) continue;
    if ((mu <= inside && !ok) || (mu >= outside && ok)) monotone = false;
  }

  if (!monotone) {
    // Dense scan over the whole search range; keep the largest passing point.
    result.fallback_used = true;
    const int n = options.fallback_scan_points;
    const double scan_lo = std::log(options.mu_floor);
    const double scan_hi = std::log(options.mu_ceiling);
    double best = 0.0;
    double next = 0.0;
    for (int j = n - 1; j >= 0; --j) {
      const double mu = std::exp(scan_lo + (scan_hi - scan_lo) * j / (n - 1));
      if (holds(mu)) {
        best = mu;
        next = std::exp(scan_lo + (scan_hi - scan_lo) * (j + 1) / (n - 1));
        break;
      }
    }
    if (best == 0.0) return result;
    if (best >= options.mu_ceiling) {
      result.mu_max = options.mu_ceiling;
      result.capped = true;
      return result;
    }
    inside = best;
    outside = next;
  }

  result.mu_max = bisect_log_boundary(holds, inside, outside, options.rel_tol);
  return result;
}

std::size_t BoundaryCurve::feasible_count() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const BoundaryPoint& p) { return p.result.feasible; }));
}

BoundaryCurve sweep(Criterion criterion, const ModelParams& params, const std::vector<double>& t_grid,
                    const SolverOptions& options) {
  options.validate();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] <= 1.0)) throw DomainError("grid transmittances must lie in (0,1]");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("grid must be strictly increasing");
  }

  BoundaryCurve curve;
  curve.model = params.model;
  curve.criterion = criterion;
  curve.meta = params;
  curve.points.resize(t_grid.size());
  const NgBoundary& boundary = NgBoundary::shared();

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(1, t_grid.size())));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < t_grid.size(); i = next++) {
        curve.points[i].T = t_grid[i];
        curve.points[i].result = mu_max_numeric(criterion, params.with_T(t_grid[i]), options, boundary);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return curve;
}

TminResult t_min_numeric(const ModelParams& params, const SolverOptions& options, double t_floor) {
  options.validate();
  if (!(t_floor > 0.0 && t_floor < 1.0)) throw DomainError("t_floor must lie in (0,1)");
  auto secure = [&](double t) {
    return passes(Criterion::Security, params.with_mu(0.0).with_T(t), options, NgBoundary::shared());
  };
  TminResult result;
  if (!secure(1.0)) return result;
  result.feasible = true;
  if (secure(t_floor)) {
    result.t_min = t_floor;
    result.reaches_floor = true;
    return result;
  }
  // bisect_log_boundary returns the passing end of the final bracket.
  result.t_min = bisect_log_boundary(secure, 1.0, t_floor, options.rel_tol);
  return result;
}

std::vector<double> make_grid(double lo, double hi, int count, bool logarithmic) {
  if (count < 2) throw DomainError("grid needs at least 2 points");
  if (!(lo < hi)) throw DomainError("grid needs min < max");
  if (logarithmic && !(lo > 0.0)) throw DomainError("logarithmic grid needs min > 0");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double t = static_cast<double>(j) / (count - 1);
    grid[j] = logarithmic ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                          : lo + t * (hi - lo);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace qkdng
