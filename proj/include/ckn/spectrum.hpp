#pragma once

#include <Eigen/Dense>

#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/tridiagonal.hpp"

namespace ckn {

/// -d^2/dt^2 + V on the extremal's grid, for sphere-harmonic level k:
///   V_i = lambda^2 + k (k + N - 2) - (p - 1) w(t_i)^{p-2}.
struct ModeOperator {
  int k = 0;
  double lambda_k = 0.0;
  Eigen::VectorXd potential;
  double t0 = 0.0;
  double dt = 0.0;
  CknParams params;

  Eigen::Index size() const { return potential.size(); }
  double asymptote() const { return params.lambda * params.lambda + lambda_k; }
};

struct EigenReport {
  int k = 0;
  double mu = 0.0;              // corrected eigenvalue, O(dx^4)
  double mu_fd = 0.0;           // raw three-point finite-difference eigenvalue, O(dx^2)
  Eigen::VectorXd eigenvector;  // on all grid nodes, zero at the two ends, int phi^2 dt = 1
  double truncation = 0.0;      // half-length of the Dirichlet box
  double dx = 0.0;
};

/// Grid for spectral computations. The half-width is a lower bound; it is
/// widened until the potential is within 1e-10 of its asymptote, and dx is
/// refined for sharply peaked extremals (rate > 5).
struct SpectrumGrid {
  double half_width = kDefaultHalfWidth;
  double dx = kDefaultStep;
};

ModeOperator build_mode_operator(const LogGridProfile& extremal, int k);

/// Dirichlet finite-difference matrix on the interior nodes.
SymTridiagonal<double> discretize(const ModeOperator& op);

/// index-th eigenpair (0 = principal) by Sturm bisection and inverse iteration.
///
/// The three-point scheme underestimates eigenvalues by
/// (dx^2 / 12) <phi, phi''''> / <phi, phi> + O(dx^4); `mu` adds that term back
/// using the discrete eigenvector, ||D2 phi||^2 / (12 dx^2 ||phi||^2).
/// Error: O(exp(-2 sqrt(V_inf - mu) T)) + O(dx^4) for `mu`, O(dx^2) for `mu_fd`.
EigenReport mode_eigenpair(const ModeOperator& op, int index);

inline EigenReport principal_eigenvalue(const ModeOperator& op) { return mode_eigenpair(op, 0); }

/// The sampled extremal used for spectral work on `grid` (widened as above).
LogGridProfile spectral_extremal(const CknParams& params, const SpectrumGrid& grid = {});

/// Principal eigenvalue of the k = 1 mode; negative means the radial extremal
/// is unstable under the first non-radial perturbation.
double fs_mode_eigenvalue(const CknParams& params, const SpectrumGrid& grid = {});

/// Bisects b in (a, a+1) on the sign of fs_mode_eigenvalue. Throws
/// NoSignChange with the endpoint eigenvalues if the bracket fails.
double find_fs_threshold(int N, double a, double tol, const SpectrumGrid& grid = {});

}  // namespace ckn
