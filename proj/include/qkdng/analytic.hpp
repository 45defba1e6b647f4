#pragma once

namespace qkdng::analytic {

// Low-transmittance approximations of the boundary curves, d = 0.  The
// security forms return 0 once e >= 2 Q_th.
double mu_max_qkd_I(double p, double e, double T);
double mu_max_qkd_II(double p, double e);
/// Valid for nu << T << 1.
double mu_max_qkd_III(double e, double T);

double mu_max_nc_I(double p, double T);
double mu_max_ng_I(double p, double T);
double mu_max_nc_II(double p);
double mu_max_ng_II(double p, double T);
double mu_max_nc_III(double T);
double mu_max_ng_III(double T);

// Minimal secure transmittance without channel noise.  Throw
// InfeasibleError once e >= 2 Q_th.
double t_min_I_II(double p, double e, double d);
/// Heralded source with nu << d.
double t_min_III_small_nu(double e, double d);
/// Heralded source with d << nu.
double t_min_III_large_nu(double e, double nu);
/// Non-Gaussianity of the arriving light, heralded source, mu -> 0.
double t_min_ng_III(double nu);

}  // namespace qkdng::analytic
