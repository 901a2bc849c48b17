#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>

#include "ckn/params.hpp"
#include "ckn/profiles.hpp"

namespace ckn {

/// Fixed-step trajectory of w_tt = lambda^2 w - |w|^{p-2} w.
/// Samples are stored in increasing t regardless of integration direction.
struct OdeRun {
  LogGridProfile profile;
  Eigen::VectorXd derivative;             // w_t
  Eigen::VectorXd energy_first_integral;  // 1/2 w_t^2 - 1/2 lambda^2 w^2 + |w|^p / p
  double t_final = 0.0;                   // last integrated time (in integration order)
  double w_final = 0.0;
  double w_t_final = 0.0;
};

inline constexpr double kBlowUpThreshold = 1e8;

/// Classical RK4 from t_span.first to t_span.second (either direction) with
/// step magnitude close to dt. Throws BlowUp once |w| exceeds 1e8.
OdeRun integrate(const CknParams& params, double w0, double w0_t,
                 std::pair<double, double> t_span, double dt);

double first_integral(const CknParams& params, double w, double w_t);

/// Recovers the homoclinic orbit by bisecting the peak value w(0) = m with
/// w_t(0) = 0. The bracket starts at the nonzero equilibrium (trajectories
/// oscillate) and a doubled cap (trajectories cross zero); it never uses the
/// closed-form amplitude. Returns the symmetric profile on [-t_max, t_max]
/// sampled at dt. The reported bracket satisfies hi - lo <= tol * m.
struct ShootResult {
  LogGridProfile profile;
  double peak = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

ShootResult shoot_homoclinic(const CknParams& params, double t_max, double tol,
                             double dt = kDefaultStep);

enum class ResidualMode { Auto, Analytic, FiniteDifference };

/// max |w_tt - lambda^2 w + w^{p-1}|. Auto uses the analytic second
/// derivative when the profile carries an ExtremalForm, otherwise 4th-order
/// central differences on the interior nodes.
double residual_autonomous(const LogGridProfile& profile, ResidualMode mode = ResidualMode::Auto);

enum class Direction { Constant, Decreasing, Increasing };

struct MonotonicityReport {
  bool monotone = false;           // in the expected direction
  Direction expected = Direction::Decreasing;
  bool flux_nonincreasing = false; // r^{N'-1} u'(r) non-increasing
  double max_violation = 0.0;
};

/// Radial profiles are their own spherical average. Checks that u(r) is
/// decreasing for N' >= 2 and increasing for N' < 2, and that the flux
/// r^{N'-1} u' is non-increasing (tolerance 1e-8 of its scale).
MonotonicityReport spherical_average_monotone(const LogGridProfile& profile);

enum class LiouvilleCase { CriticalA, HardyEndpoint };
enum class LiouvilleConclusion { OnlyZero, Inconclusive };

struct LiouvilleWitness {
  enum class Kind { InequalityViolated, SecantCrossing } kind = Kind::InequalityViolated;
  Eigen::Index node = 0;
  double t = 0.0;
  double value = 0.0;   // y_tt + y^{p-1} for violations, y for secant witnesses
  double slope = 0.0;   // y_t at the node (secant witnesses)
  double crossing_t = 0.0;
};

struct LiouvilleVerdict {
  LiouvilleCase which = LiouvilleCase::HardyEndpoint;
  std::optional<std::pair<std::complex<double>, std::complex<double>>> roots;
  LiouvilleConclusion conclusion = LiouvilleConclusion::Inconclusive;
  std::optional<LiouvilleWitness> witness;
};

/// b = a + 1, a < a_c: roots of mu^2 + (N' - 2) mu + 1 = 0 as the certificate.
LiouvilleVerdict liouville_hardy_endpoint(const CknParams& params);

/// a = a_c: a certificate checker on a probe y(t) = u(e^t). It cannot prove
/// the Liouville property; it only falsifies candidate counterexamples.
LiouvilleVerdict liouville_critical_a(const CknParams& params, const LogGridProfile& probe,
                                      double tol = 1e-10);

}  // namespace ckn
