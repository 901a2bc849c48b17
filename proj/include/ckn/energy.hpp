#pragma once

#include <utility>

#include "ckn/profiles.hpp"

namespace ckn {

/// Weighted integrals of a radial profile u(r) = r^{-lambda} w(ln r):
///   grad_sq   = int |x|^{-2a} |grad u|^2    = omega_N int (w_t - lambda w)^2 dt
///   lp        = int |x|^{-bp} |u|^p         = omega_N int |w|^p dt
///   hardy_lhs = int |x|^{-2a-2} u^2         = omega_N int w^2 dt
/// The powers of r cancel exactly because p (b + lambda) = N.
struct EnergyReport {
  double grad_sq = 0.0;
  double lp = 0.0;
  double hardy_lhs = 0.0;
  double quotient = 0.0;  // grad_sq / lp^{2/p}
  double omega_n = 0.0;   // |S^{N-1}|
};

/// Surface measure of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

/// Simpson quadrature on the t-grid, w_t from 4th-order differences.
/// Throws TailNotDecayed unless |w| at both ends is at most 1e-6 max|w|
/// (integrands at most 1e-12 of their peak).
EnergyReport energy_report(const LogGridProfile& profile);

struct DualEnergy {
  double lp = 0.0;
  double lp_dual = 0.0;
  double grad_sq = 0.0;
  double grad_sq_dual = 0.0;
};

/// L^p and gradient integrals of the profile and of its dual, each computed
/// by Gauss-Legendre quadrature in r with u(r) reconstructed by interpolation
/// (independent of the shared w-space integral).
DualEnergy verify_dual_energy(const LogGridProfile& profile);

/// r-space quadrature of int |x|^{-bp} |u|^p over the profile's radial range.
double radial_lp(const LogGridProfile& profile);
/// r-space quadrature of int |x|^{-2a} |u'|^2 over the profile's radial range.
double radial_grad_sq(const LogGridProfile& profile);

struct HardyReport {
  double lhs = 0.0;          // omega_N int w^2 dt
  double rhs = 0.0;          // grad_sq + 1 (constant C not included)
  double sharp_bound = 0.0;  // grad_sq / lambda^2 >= lhs
};

HardyReport hardy_check(const LogGridProfile& profile);

/// Least-squares slope of ln u against ln r over the window [lo, hi] of ln r.
double decay_fit(const LogGridProfile& profile, std::pair<double, double> window);

/// max_t |w(t)| = sup_r u(r) r^{(N-2a-2)/2}.
double weighted_sup(const LogGridProfile& profile);

}  // namespace ckn
