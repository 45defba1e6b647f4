/* C interface to the qkdng library.  All functions return a status code;
 * on failure qkdng_last_error() describes the problem (per thread). */
#ifndef QKDNG_QKDNG_H
#define QKDNG_QKDNG_H

#include <stddef.h>
#include <stdint.h>

#if defined(QKDNG_BUILDING_LIBRARY)
#define QKDNG_API __attribute__((visibility("default")))
#else
#define QKDNG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QKDNG_OK = 0,
  QKDNG_ERR_DOMAIN = 1,
  QKDNG_ERR_UNDEFINED_RATE = 2,
  QKDNG_ERR_INFEASIBLE = 3,
  QKDNG_ERR_OUT_OF_SPAN = 4,
  QKDNG_ERR_INVALID_ARGUMENT = 5,
  QKDNG_ERR_INTERNAL = 6
} qkdng_status;

typedef enum { QKDNG_MODEL_THERMAL_BATH = 0, QKDNG_MODEL_NOISE_BEFORE = 1, QKDNG_MODEL_SPDC = 2 } qkdng_model;

typedef enum {
  QKDNG_CRITERION_SECURITY = 0,
  QKDNG_CRITERION_NONCLASSICAL = 1,
  QKDNG_CRITERION_NONGAUSSIAN = 2
} qkdng_criterion;

typedef enum { QKDNG_NOISE_THERMAL = 0, QKDNG_NOISE_POISSON = 1 } qkdng_noise;

typedef struct {
  qkdng_model model;
  double p;
  double nu;
  double T;
  double mu;
  double e;
  double d;
  qkdng_noise noise;
} qkdng_params;

/* Dark-count probability of the autocorrelation detectors (0 = ideal) and
 * relative tolerance of the boundary searches (0 = default 1e-6). */
typedef struct {
  double witness_dark_count;
  double rel_tol;
  unsigned workers;
} qkdng_solver_options;

typedef struct {
  double qber;
  double single_photon_fraction;
  double p_exp;
  double delta_i;
  double p_s;
  double p_c;
  double p_none;
  double omega_1;
  double omega_2plus;
  int secure;
  int nonclassical;
  int nongaussian;
} qkdng_point;

typedef struct {
  double T;
  double mu_max;
  int feasible;
  int capped;
  int fallback_used;
} qkdng_curve_point;

typedef struct {
  double t_min;
  int feasible;
  int reaches_floor;
} qkdng_tmin;

typedef struct {
  const char* name;
  double analytic;
  double mc;
  double std_err;
  double sigma;
  uint64_t samples;
} qkdng_mc_row;

typedef struct {
  double V;
  double n_of_V;
  double p_s;
  double p_c;
} qkdng_ng_point;

typedef struct qkdng_curve qkdng_curve;
typedef struct qkdng_mc_report qkdng_mc_report;

QKDNG_API const char* qkdng_version(void);
QKDNG_API const char* qkdng_last_error(void);

/* Defaults: thermal bath, p = 1, nu = 0.01, T = 1, all noise zero. */
QKDNG_API qkdng_params qkdng_default_params(void);
QKDNG_API qkdng_solver_options qkdng_default_solver_options(void);

QKDNG_API qkdng_status qkdng_evaluate_point(const qkdng_params* params, const qkdng_solver_options* options,
                                            qkdng_point* out);

QKDNG_API qkdng_status qkdng_mu_max(qkdng_criterion criterion, const qkdng_params* params,
                                    const qkdng_solver_options* options, qkdng_curve_point* out);

/* Sweeps params over the strictly increasing grid t_grid[0..count). */
QKDNG_API qkdng_status qkdng_sweep(qkdng_criterion criterion, const qkdng_params* params, const double* t_grid,
                                   size_t count, const qkdng_solver_options* options, qkdng_curve** out);
QKDNG_API size_t qkdng_curve_size(const qkdng_curve* curve);
QKDNG_API qkdng_status qkdng_curve_point_at(const qkdng_curve* curve, size_t index, qkdng_curve_point* out);
QKDNG_API void qkdng_curve_free(qkdng_curve* curve);

QKDNG_API qkdng_status qkdng_t_min(const qkdng_params* params, qkdng_tmin* out);

QKDNG_API qkdng_status qkdng_mc_validate(const qkdng_params* params, uint64_t samples, uint64_t seed,
                                         qkdng_mc_report** out);
QKDNG_API size_t qkdng_mc_report_size(const qkdng_mc_report* report);
/* row->name stays valid until the report is freed. */
QKDNG_API qkdng_status qkdng_mc_report_row(const qkdng_mc_report* report, size_t index, qkdng_mc_row* row);
QKDNG_API void qkdng_mc_report_free(qkdng_mc_report* report);

QKDNG_API qkdng_status qkdng_nc_boundary(double p_s, double* p_c);
QKDNG_API qkdng_status qkdng_ng_boundary(double p_s, double* p_c);
QKDNG_API size_t qkdng_ng_curve_size(void);
QKDNG_API qkdng_status qkdng_ng_curve_point(size_t index, qkdng_ng_point* out);
QKDNG_API qkdng_status qkdng_apply_detector_darkcounts(double d, double* p_s, double* p_c, double* p_none);

QKDNG_API qkdng_status qkdng_qber_threshold(double* out);
QKDNG_API qkdng_status qkdng_y_threshold(double e, double* out);

/* Low-transmittance approximations.  Parameters a model does not use are
 * ignored. */
QKDNG_API qkdng_status qkdng_analytic_mu_max(qkdng_model model, qkdng_criterion criterion, double p, double e,
                                             double T, double* out);
/* Minimal secure transmittance from the closed forms.  The heralded source
 * picks the nu << d or d << nu form by comparing nu with d. */
QKDNG_API qkdng_status qkdng_analytic_t_min(const qkdng_params* params, double* out);
QKDNG_API qkdng_status qkdng_analytic_t_min_ng(double nu, double* out);

#ifdef __cplusplus
}
#endif

#endif
