#include "ckn/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ckn/error.hpp"
#include "ckn/numerics.hpp"

namespace ckn {

namespace {

// log(sech x) without overflow for large |x|.
double log_sech(double x) {
  const double ax = std::abs(x);
  return -ax + std::log(2.0) - std::log1p(std::exp(-2.0 * ax));
}

std::string grid_context(double lo, double hi, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"grid_lo\":" << lo << ",\"grid_hi\":" << hi << ",\"value\":" << value << "}";
  return os.str();
}

}  // namespace

double ExtremalForm::w(double t) const {
  return amplitude * std::exp(sech_power * log_sech(rate * (t - center)));
}

double ExtremalForm::w_t(double t) const {
  const double s = rate * (t - center);
  return -sech_power * rate * std::tanh(s) * w(t);
}

double ExtremalForm::w_tt(double t) const {
  const double s = rate * (t - center);
  const double th = std::tanh(s);
  return sech_power * rate * rate * w(t) * ((sech_power + 1.0) * th * th - 1.0);
}

void validate(const LogGridProfile& profile) {
  if (profile.size() < 16) {
    throw Error(ErrorCode::InvalidProfile, "profile needs at least 16 samples");
  }
  if (!(profile.dt > 0.0) || !std::isfinite(profile.dt) || !std::isfinite(profile.t0)) {
    throw Error(ErrorCode::InvalidProfile, "profile grid must have finite t0 and dt > 0");
  }
  if (!profile.values.allFinite()) {
    throw Error(ErrorCode::InvalidProfile, "profile samples must be finite");
  }
}

void validate_solution(const LogGridProfile& profile) {
  validate(profile);
  if ((profile.values.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidProfile, "solution profiles must be nonnegative");
  }
}

ExtremalForm extremal_form(const CknParams& params) {
  if (!has_homoclinic(params)) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"lambda\":" << params.lambda << ",\"p\":" << params.p << "}";
    throw Error(ErrorCode::DegenerateParams,
                "no homoclinic orbit: requires lambda != 0 and p > 2", os.str());
  }
  const double lam = params.lambda;
  const double pm2 = params.p - 2.0;
  ExtremalForm form;
  form.amplitude = std::pow(params.p * lam * lam / 2.0, 1.0 / pm2);
  form.sech_power = 2.0 / pm2;
  form.rate = lam * pm2 / 2.0;
  form.center = 0.0;
  if (!std::isfinite(form.amplitude)) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"lambda\":" << lam << ",\"p\":" << params.p << "}";
    throw Error(ErrorCode::DegenerateParams, "extremal amplitude overflows double precision", os.str());
  }
  return form;
}

LogGridProfile sample_extremal(const CknParams& params, const ExtremalForm& form, double t0,
                               double dt, Eigen::Index n) {
  if (n < 16 || !(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sample_extremal needs n >= 16 and dt > 0");
  }
  LogGridProfile profile;
  profile.t0 = t0;
  profile.dt = dt;
  profile.params = params;
  profile.form = form;
  profile.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) profile.values(i) = form.w(profile.t(i));
  return profile;
}

LogGridProfile sample_extremal(const CknParams& params, const ExtremalForm& form,
                               double half_width, double dt) {
  const auto half = static_cast<Eigen::Index>(std::llround(half_width / dt));
  return sample_extremal(params, form, -static_cast<double>(half) * dt, dt, 2 * half + 1);
}

LogGridProfile scale_profile(const LogGridProfile& profile, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error(ErrorCode::NonpositiveScale, "scale factor R must be positive",
                grid_context(0, 0, R));
  }
  if (R == 1.0) return profile;
  LogGridProfile out = profile;
  const double shift = std::log(R);
  out.t0 -= shift;
  if (out.form) out.form->center -= shift;
  return out;
}

LogGridProfile dualize_profile(const LogGridProfile& profile) {
  LogGridProfile out = profile;
  out.params = dualize_params(profile.params);
  if (out.form) out.form->rate = -out.form->rate;
  return out;
}

double to_radial_u(const LogGridProfile& profile, double r) {
  if (!(r > 0.0)) {
    throw Error(ErrorCode::OutOfGrid, "radius must be positive", grid_context(profile.t0,
                profile.t_end(), r));
  }
  const double t = std::log(r);
  const double s = (t - profile.t0) / profile.dt;
  const double n1 = static_cast<double>(profile.size() - 1);
  const double slack = 1e-9;
  if (s < -slack || s > n1 + slack) {
    throw Error(ErrorCode::OutOfGrid, "ln r outside the profile grid",
                grid_context(profile.t0, profile.t_end(), t));
  }
  const double w = numerics::cubic_at(profile.values, std::clamp(s, 0.0, n1));
  return std::exp(-profile.params.lambda * t) * w;
}

double to_radial_du(const LogGridProfile& profile, double r) {
  if (!(r > 0.0)) {
    throw Error(ErrorCode::OutOfGrid, "radius must be positive", grid_context(profile.t0,
                profile.t_end(), r));
  }
  const double t = std::log(r);
  const double s = (t - profile.t0) / profile.dt;
  const double n1 = static_cast<double>(profile.size() - 1);
  if (s < -1e-9 || s > n1 + 1e-9) {
    throw Error(ErrorCode::OutOfGrid, "ln r outside the profile grid",
                grid_context(profile.t0, profile.t_end(), t));
  }
  const Eigen::VectorXd wt = numerics::derivative4(profile.values, profile.dt);
  const double sc = std::clamp(s, 0.0, n1);
  const double w = numerics::cubic_at(profile.values, sc);
  const double w_t = numerics::cubic_at(wt, sc);
  const double lam = profile.params.lambda;
  return std::exp(-(lam + 1.0) * t) * (w_t - lam * w);
}

// w = C e^{lambda t} (1 + e^{inner t})^{-outer}; derivatives through
// L = ln w:  L' = lambda - outer inner sigma,  L'' = -outer inner^2 sigma (1 - sigma).
double PowerForm::w(double t) const {
  const double x = inner * t;
  const double log1pexp = x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  return std::exp(log_scale + lambda * t - outer * log1pexp);
}

double PowerForm::w_t(double t) const {
  const double sigma = 1.0 / (1.0 + std::exp(-inner * t));
  return w(t) * (lambda - outer * inner * sigma);
}

double PowerForm::w_tt(double t) const {
  const double sigma = 1.0 / (1.0 + std::exp(-inner * t));
  const double dl = lambda - outer * inner * sigma;
  const double ddl = -outer * inner * inner * sigma * (1.0 - sigma);
  return w(t) * (ddl + dl * dl);
}

PowerForm power_form(const CknParams& params, InnerExponent exponent) {
  const ExtremalForm ext = extremal_form(params);
  const double k = exponent == InnerExponent::Corrected ? params.p - 2.0 : params.p - 1.0;
  PowerForm form;
  form.outer = 2.0 / (params.p - 2.0);
  form.log_scale = std::log(ext.amplitude) + form.outer * std::log(2.0);
  form.inner = k * params.lambda;
  form.lambda = params.lambda;
  return form;
}

double power_form_residual(const CknParams& params, const PowerForm& form, double t0, double dt,
                           Eigen::Index n) {
  const double lam2 = params.lambda * params.lambda;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const double w = form.w(t);
    const double r = std::abs(form.w_tt(t) - lam2 * w + std::pow(std::abs(w), params.p - 1.0));
    if (!(r <= worst)) worst = r;  // NaN must not hide
  }
  return worst;
}

}  // namespace ckn
