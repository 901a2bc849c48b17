#pragma once

#include <Eigen/Dense>
#include <optional>

#include "ckn/params.hpp"

namespace ckn {

/// Radial extremal in Emden-Fowler coordinates t = ln r, w = r^lambda u:
///   w(t) = amplitude * sech^{sech_power}(rate * (t - center)),
/// which solves w_tt = lambda^2 w - w^{p-1}.
struct ExtremalForm {
  double amplitude = 0.0;   // (p lambda^2 / 2)^{1/(p-2)}
  double sech_power = 0.0;  // 2 / (p - 2)
  double rate = 0.0;        // lambda (p - 2) / 2
  double center = 0.0;      // -ln R for the scaled family u_R

  double w(double t) const;
  double w_t(double t) const;
  double w_tt(double t) const;
};

/// A radial profile w(t_i), t_i = t0 + i dt, attached to its parameter point.
/// `form` is present when the samples are an exact evaluation of an
/// ExtremalForm; residual checks then use the analytic second derivative.
struct LogGridProfile {
  double t0 = 0.0;
  double dt = 0.0;
  Eigen::VectorXd values;
  CknParams params;
  std::optional<ExtremalForm> form;

  Eigen::Index size() const { return values.size(); }
  double t(Eigen::Index i) const { return t0 + static_cast<double>(i) * dt; }
  double t_end() const { return t(size() - 1); }
};

/// Checks the profile invariants (finite samples, at least 16 of them,
/// dt > 0) and throws InvalidProfile otherwise.
void validate(const LogGridProfile& profile);

/// Checks nonnegativity in addition to validate(); used for profiles that
/// claim to be solutions.
void validate_solution(const LogGridProfile& profile);

ExtremalForm extremal_form(const CknParams& params);

LogGridProfile sample_extremal(const CknParams& params, const ExtremalForm& form, double t0,
                               double dt, Eigen::Index n);

/// Symmetric grid [-half_width, half_width] with step dt.
LogGridProfile sample_extremal(const CknParams& params, const ExtremalForm& form,
                               double half_width, double dt);

/// u_R(x) = R^{(N-2-2a)/2} u(R x) is the translation t -> t - ln R in w.
LogGridProfile scale_profile(const LogGridProfile& profile, double R);

/// Same samples attached to the dual parameter point.
LogGridProfile dualize_profile(const LogGridProfile& profile);

/// u(r) = r^{-lambda} w(ln r), cubic interpolation between nodes.
double to_radial_u(const LogGridProfile& profile, double r);

/// du/dr = r^{-lambda-1} (w_t - lambda w) with w_t from 4th-order differences,
/// interpolated like to_radial_u.
double to_radial_du(const LogGridProfile& profile, double r);

/// The closed form  C (1 + r^{k (a_c - a)})^{-2/(p-2)}  written in w-space.
/// The inner factor k is the quantity under dispute; `Corrected` uses p - 2
/// and `Printed` uses p - 1. C is fixed to match the extremal amplitude at
/// the corrected exponent.
enum class InnerExponent { Corrected, Printed };

struct PowerForm {
  double log_scale = 0.0; // ln C, kept in logs because C = A 2^{2/(p-2)} overflows near p = 2
  double inner = 0.0;     // k * lambda
  double outer = 0.0;     // 2 / (p - 2)
  double lambda = 0.0;

  double w(double t) const;
  double w_t(double t) const;
  double w_tt(double t) const;
};

PowerForm power_form(const CknParams& params, InnerExponent exponent);

/// max_i |w_tt - lambda^2 w + w^{p-1}| of a PowerForm on the given grid,
/// analytic derivatives throughout.
double power_form_residual(const CknParams& params, const PowerForm& form, double t0, double dt,
                           Eigen::Index n);

/// Default extremal grid used by the CLI and the spectral code.
inline constexpr double kDefaultHalfWidth = 40.0;
inline constexpr double kDefaultStep = 0.01;

}  // namespace ckn
