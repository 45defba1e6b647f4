#include "qkdng/qkdng.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qkdng/analytic.hpp"
#include "qkdng/boundary.hpp"
#include "qkdng/error.hpp"
#include "qkdng/mc_oracle.hpp"
#include "qkdng/witness.hpp"

struct qkdng_curve {
  qkdng::BoundaryCurve curve;
};

struct qkdng_mc_report {
  std::vector<qkdng::McComparison> rows;
};

namespace {

thread_local std::string last_error;

qkdng_status fail(qkdng_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
qkdng_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return QKDNG_OK;
  } catch (const qkdng::DomainError& e) {
    return fail(QKDNG_ERR_DOMAIN, e.what());
  } catch (const qkdng::UndefinedRateError& e) {
    return fail(QKDNG_ERR_UNDEFINED_RATE, e.what());
  } catch (const qkdng::InfeasibleError& e) {
    return fail(QKDNG_ERR_INFEASIBLE, e.what());
  } catch (const qkdng::OutOfSpanError& e) {
    return fail(QKDNG_ERR_OUT_OF_SPAN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QKDNG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QKDNG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QKDNG_ERR_INTERNAL, "unknown error");
  }
}

#define QKDNG_REQUIRE(ptr)                                                       \
  do {                                                                           \
    if ((ptr) == nullptr) return fail(QKDNG_ERR_INVALID_ARGUMENT, #ptr " is NULL"); \
  } while (0)

qkdng::Model to_model(qkdng_model m) {
  switch (m) {
    case QKDNG_MODEL_THERMAL_BATH: return qkdng::Model::ThermalBath;
    case QKDNG_MODEL_NOISE_BEFORE: return qkdng::Model::NoiseBefore;
    case QKDNG_MODEL_SPDC: return qkdng::Model::Spdc;
  }
  throw qkdng::DomainError("unknown model");
}

qkdng::Criterion to_criterion(qkdng_criterion c) {
  switch (c) {
    case QKDNG_CRITERION_SECURITY: return qkdng::Criterion::Security;
    case QKDNG_CRITERION_NONCLASSICAL: return qkdng::Criterion::Nonclassical;
    case QKDNG_CRITERION_NONGAUSSIAN: return qkdng::Criterion::NonGaussian;
  }
  throw qkdng::DomainError("unknown criterion");
}

qkdng::ModelParams to_params(const qkdng_params& p) {
  qkdng::ModelParams m;
  m.model = to_model(p.model);
  m.p = p.p;
  m.nu = p.nu;
  m.T = p.T;
  m.mu = p.mu;
  m.e = p.e;
  m.d = p.d;
  if (p.noise != QKDNG_NOISE_THERMAL && p.noise != QKDNG_NOISE_POISSON) {
    throw qkdng::DomainError("unknown noise statistics");
  }
  m.noise = p.noise == QKDNG_NOISE_THERMAL ? qkdng::PhotonLaw::Thermal : qkdng::PhotonLaw::Poisson;
  m.validate();
  return m;
}

qkdng::SolverOptions to_options(const qkdng_solver_options* o) {
  qkdng::SolverOptions s;
  if (o != nullptr) {
    s.witness_dark_count = o->witness_dark_count;
    if (o->rel_tol != 0.0) s.rel_tol = o->rel_tol;
    s.workers = o->workers;
  }
  s.validate();
  return s;
}

qkdng_curve_point to_c(const qkdng::BoundaryPoint& p) {
  return {p.T, p.result.mu_max, p.result.feasible, p.result.capped, p.result.fallback_used};
}

}  // namespace

extern "C" {

const char* qkdng_version(void) { return "0.1.0"; }

const char* qkdng_last_error(void) { return last_error.c_str(); }

qkdng_params qkdng_default_params(void) {
  return {QKDNG_MODEL_THERMAL_BATH, 1.0, 0.01, 1.0, 0.0, 0.0, 0.0, QKDNG_NOISE_THERMAL};
}

qkdng_solver_options qkdng_default_solver_options(void) { return {0.0, 1e-6, 0}; }

qkdng_status qkdng_evaluate_point(const qkdng_params* params, const qkdng_solver_options* options,
                                  qkdng_point* out) {
  QKDNG_REQUIRE(params);
  QKDNG_REQUIRE(out);
  return guarded([&] {
    const qkdng::ModelParams m = to_params(*params);
    const qkdng::SolverOptions s = to_options(options);
    const qkdng::KeyRateResult rate = qkdng::key_rate(m);
    const qkdng::ClickStats stats = qkdng::click_stats(m);
    const qkdng::Omega w = qkdng::omega(m);
    qkdng_point p{};
    p.qber = rate.qber;
    p.single_photon_fraction = rate.single_photon_fraction;
    p.p_exp = rate.p_exp;
    p.delta_i = rate.delta_i;
    p.p_s = stats.p_s;
    p.p_c = stats.p_c;
    p.p_none = stats.p_none;
    p.omega_1 = w.one;
    p.omega_2plus = w.two_plus;
    p.secure = qkdng::criterion_holds(qkdng::Criterion::Security, m, s);
    p.nonclassical = qkdng::criterion_holds(qkdng::Criterion::Nonclassical, m, s);
    p.nongaussian = qkdng::criterion_holds(qkdng::Criterion::NonGaussian, m, s);
    *out = p;
  });
}

qkdng_status qkdng_mu_max(qkdng_criterion criterion, const qkdng_params* params,
                          const qkdng_solver_options* options, qkdng_curve_point* out) {
  QKDNG_REQUIRE(params);
  QKDNG_REQUIRE(out);
  return guarded([&] {
    const qkdng::ModelParams m = to_params(*params);
    qkdng::BoundaryPoint point;
    point.T = m.T;
    point.result = qkdng::mu_max_numeric(to_criterion(criterion), m, to_options(options));
    *out = to_c(point);
  });
}

qkdng_status qkdng_sweep(qkdng_criterion criterion, const qkdng_params* params, const double* t_grid,
                         size_t count, const qkdng_solver_options* options, qkdng_curve** out) {
  QKDNG_REQUIRE(params);
  QKDNG_REQUIRE(t_grid);
  QKDNG_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const std::vector<double> grid(t_grid, t_grid + count);
    auto curve = new qkdng_curve{
        qkdng::sweep(to_criterion(criterion), to_params(*params), grid, to_options(options))};
    *out = curve;
  });
}

size_t qkdng_curve_size(const qkdng_curve* curve) { return curve ? curve->curve.points.size() : 0; }

qkdng_status qkdng_curve_point_at(const qkdng_curve* curve, size_t index, qkdng_curve_point* out) {
  QKDNG_REQUIRE(curve);
  QKDNG_REQUIRE(out);
  if (index >= curve->curve.points.size()) return fail(QKDNG_ERR_INVALID_ARGUMENT, "index out of range");
  *out = to_c(curve->curve.points[index]);
  return QKDNG_OK;
}

void qkdng_curve_free(qkdng_curve* curve) { delete curve; }

qkdng_status qkdng_t_min(const qkdng_params* params, qkdng_tmin* out) {
  QKDNG_REQUIRE(params);
  QKDNG_REQUIRE(out);
  return guarded([&] {
    const qkdng::TminResult r = qkdng::t_min_numeric(to_params(*params));
    *out = {r.t_min, r.feasible, r.reaches_floor};
  });
}

qkdng_status qkdng_mc_validate(const qkdng_params* params, uint64_t samples, uint64_t seed,
                               qkdng_mc_report** out) {
  QKDNG_REQUIRE(params);
  QKDNG_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    qkdng::McConfig config;
    config.samples = samples;
    config.seed = seed;
    *out = new qkdng_mc_report{qkdng::compare_with_analytic(to_params(*params), config)};
  });
}

size_t qkdng_mc_report_size(const qkdng_mc_report* report) { return report ? report->rows.size() : 0; }

qkdng_status qkdng_mc_report_row(const qkdng_mc_report* report, size_t index, qkdng_mc_row* row) {
  QKDNG_REQUIRE(report);
  QKDNG_REQUIRE(row);
  if (index >= report->rows.size()) return fail(QKDNG_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& r = report->rows[index];
  *row = {r.name.c_str(), r.analytic, r.mc, r.std_err, r.sigma, r.samples};
  return QKDNG_OK;
}

void qkdng_mc_report_free(qkdng_mc_report* report) { delete report; }

qkdng_status qkdng_nc_boundary(double p_s, double* p_c) {
  QKDNG_REQUIRE(p_c);
  return guarded([&] { *p_c = qkdng::nc_boundary(p_s); });
}

qkdng_status qkdng_ng_boundary(double p_s, double* p_c) {
  QKDNG_REQUIRE(p_c);
  return guarded([&] { *p_c = qkdng::ng_boundary(p_s); });
}

size_t qkdng_ng_curve_size(void) {
  try {
    return qkdng::NgBoundary::shared().curve().size();
  } catch (...) {
    return 0;
  }
}

qkdng_status qkdng_ng_curve_point(size_t index, qkdng_ng_point* out) {
  QKDNG_REQUIRE(out);
  if (index >= qkdng_ng_curve_size()) return fail(QKDNG_ERR_INVALID_ARGUMENT, "index out of range");
  return guarded([&] {
    const auto& pt = qkdng::NgBoundary::shared().curve()[index];
    *out = {pt.V, pt.n_of_V, pt.p_s, pt.p_c};
  });
}

qkdng_status qkdng_apply_detector_darkcounts(double d, double* p_s, double* p_c, double* p_none) {
  QKDNG_REQUIRE(p_s);
  QKDNG_REQUIRE(p_c);
  QKDNG_REQUIRE(p_none);
  return guarded([&] {
    const qkdng::ClickStats out = qkdng::apply_detector_darkcounts({*p_s, *p_c, *p_none}, d);
    *p_s = out.p_s;
    *p_c = out.p_c;
    *p_none = out.p_none;
  });
}

qkdng_status qkdng_qber_threshold(double* out) {
  QKDNG_REQUIRE(out);
  return guarded([&] { *out = qkdng::qber_threshold(); });
}

qkdng_status qkdng_y_threshold(double e, double* out) {
  QKDNG_REQUIRE(out);
  return guarded([&] { *out = qkdng::y_threshold(e); });
}

qkdng_status qkdng_analytic_mu_max(qkdng_model model, qkdng_criterion criterion, double p, double e, double T,
                                   double* out) {
  QKDNG_REQUIRE(out);
  namespace a = qkdng::analytic;
  return guarded([&] {
    const qkdng::Model m = to_model(model);
    switch (to_criterion(criterion)) {
      case qkdng::Criterion::Security:
        *out = m == qkdng::Model::ThermalBath ? a::mu_max_qkd_I(p, e, T)
               : m == qkdng::Model::NoiseBefore ? a::mu_max_qkd_II(p, e)
                                                : a::mu_max_qkd_III(e, T);
        break;
      case qkdng::Criterion::Nonclassical:
        *out = m == qkdng::Model::ThermalBath ? a::mu_max_nc_I(p, T)
               : m == qkdng::Model::NoiseBefore ? a::mu_max_nc_II(p)
                                                : a::mu_max_nc_III(T);
        break;
      case qkdng::Criterion::NonGaussian:
        *out = m == qkdng::Model::ThermalBath ? a::mu_max_ng_I(p, T)
               : m == qkdng::Model::NoiseBefore ? a::mu_max_ng_II(p, T)
                                                : a::mu_max_ng_III(T);
        break;
    }
  });
}

qkdng_status qkdng_analytic_t_min(const qkdng_params* params, double* out) {
  QKDNG_REQUIRE(params);
  QKDNG_REQUIRE(out);
  namespace a = qkdng::analytic;
  return guarded([&] {
    const qkdng::ModelParams m = to_params(*params);
    if (m.model != qkdng::Model::Spdc) {
      *out = a::t_min_I_II(m.p, m.e, m.d);
    } else {
      *out = m.nu < m.d ? a::t_min_III_small_nu(m.e, m.d) : a::t_min_III_large_nu(m.e, m.nu);
    }
  });
}

qkdng_status qkdng_analytic_t_min_ng(double nu, double* out) {
  QKDNG_REQUIRE(out);
  return guarded([&] { *out = qkdng::analytic::t_min_ng_III(nu); });
}

}  // extern "C"
