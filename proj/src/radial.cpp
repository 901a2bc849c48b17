#include "ckn/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ckn/error.hpp"
#include "ckn/numerics.hpp"

namespace ckn {

namespace {

struct State {
  double w;
  double v;
};

struct Rhs {
  double lam2;
  double pm2;

  double force(double w) const { return lam2 * w - std::pow(std::abs(w), pm2) * w; }

  State step(State s, double h) const {
    const double k1w = s.v, k1v = force(s.w);
    const double k2w = s.v + 0.5 * h * k1v, k2v = force(s.w + 0.5 * h * k1w);
    const double k3w = s.v + 0.5 * h * k2v, k3v = force(s.w + 0.5 * h * k2w);
    const double k4w = s.v + h * k3v, k4v = force(s.w + h * k3w);
    return {s.w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
            s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
  }
};

Rhs make_rhs(const CknParams& params) {
  return {params.lambda * params.lambda, params.p - 2.0};
}

std::string num_context(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  os.precision(17);
  os << "{";
  bool first = true;
  for (const auto& [key, value] : items) {
    if (!first) os << ",";
    first = false;
    os << "\"" << key << "\":" << value;
  }
  os << "}";
  return os.str();
}

void require_homoclinic_regime(const CknParams& params, bool positive_lambda) {
  if (!(params.p > 2.0) || params.lambda == 0.0 || (positive_lambda && params.lambda < 0.0)) {
    throw Error(ErrorCode::DegenerateParams,
                positive_lambda ? "shooting requires p > 2 and lambda > 0"
                                : "integration requires p > 2 and lambda != 0",
                num_context({{"p", params.p}, {"lambda", params.lambda}}));
  }
}

enum class Fate { Crosses, Turns, Undecided };

// Follows the trajectory from (m, 0) until it either reaches zero (peak too
// high) or turns back upward before reaching zero (peak too low).
Fate shoot_once(const Rhs& rhs, double m, double h, double t_max) {
  State s{m, 0.0};
  const auto steps = static_cast<long>(std::ceil(t_max / h));
  for (long i = 0; i < steps; ++i) {
    s = rhs.step(s, h);
    if (s.w <= 0.0 || std::abs(s.w) > kBlowUpThreshold) return Fate::Crosses;
    if (s.v > 0.0) return Fate::Turns;
  }
  return Fate::Undecided;
}

}  // namespace

double first_integral(const CknParams& params, double w, double w_t) {
  const double lam2 = params.lambda * params.lambda;
  return 0.5 * w_t * w_t - 0.5 * lam2 * w * w + std::pow(std::abs(w), params.p) / params.p;
}

OdeRun integrate(const CknParams& params, double w0, double w0_t,
                 std::pair<double, double> t_span, double dt) {
  require_homoclinic_regime(params, false);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidStep, "step must be positive and finite",
                num_context({{"dt", dt}}));
  }
  const double span = t_span.second - t_span.first;
  if (!std::isfinite(span) || span == 0.0) {
    throw Error(ErrorCode::InvalidStep, "integration span must be nonempty and finite",
                num_context({{"t_begin", t_span.first}, {"t_end", t_span.second}}));
  }
  long steps = static_cast<long>(std::ceil(std::abs(span) / dt - 1e-9));
  steps = std::max(steps, 15L);
  const double h = span / static_cast<double>(steps);
  const Rhs rhs = make_rhs(params);

  const Eigen::Index n = steps + 1;
  Eigen::VectorXd w(n), v(n), e(n);
  State s{w0, w0_t};
  w(0) = s.w;
  v(0) = s.v;
  e(0) = first_integral(params, s.w, s.v);
  for (Eigen::Index i = 1; i < n; ++i) {
    s = rhs.step(s, h);
    if (!std::isfinite(s.w) || std::abs(s.w) > kBlowUpThreshold) {
      const double t_exit = t_span.first + static_cast<double>(i) * h;
      throw Error(ErrorCode::BlowUp, "trajectory left |w| <= 1e8",
                  num_context({{"exit_time", t_exit}, {"w", s.w}}));
    }
    w(i) = s.w;
    v(i) = s.v;
    e(i) = first_integral(params, s.w, s.v);
  }

  OdeRun run;
  run.t_final = t_span.second;
  run.w_final = s.w;
  run.w_t_final = s.v;
  run.profile.params = params;
  run.profile.dt = std::abs(h);
  if (h > 0) {
    run.profile.t0 = t_span.first;
    run.profile.values = std::move(w);
    run.derivative = std::move(v);
    run.energy_first_integral = std::move(e);
  } else {
    run.profile.t0 = t_span.second;
    run.profile.values = w.reverse();
    run.derivative = v.reverse();
    run.energy_first_integral = e.reverse();
  }
  return run;
}

ShootResult shoot_homoclinic(const CknParams& params, double t_max, double tol, double dt) {
  require_homoclinic_regime(params, true);
  if (!(t_max > 0.0) || !(tol > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "shooting needs t_max, tol and dt positive");
  }
  const Rhs rhs = make_rhs(params);
  const double lam = params.lambda;
  const double rate = std::max({1.0, lam, lam * (params.p - 2.0) / 2.0});
  const int substeps = std::max(1, static_cast<int>(std::ceil(dt * rate / 1e-3)));
  const double h = dt / substeps;
  // A peak off by one ulp departs from the orbit near t = 18/lambda. Fates
  // are decided past that point even when the requested window is shorter.
  const double horizon = std::max(t_max, 40.0 / lam);

  // w_eq^{p-2} = lambda^2
  const double w_eq = std::pow(lam, 2.0 / (params.p - 2.0));
  double lo = w_eq;
  double hi = 2.0 * w_eq;
  int iterations = 0;
  std::optional<double> hovering;

  for (;; ++iterations) {
    if (iterations > 200) {
      throw Error(ErrorCode::NoConvergence, "no crossing trajectory found while raising the cap",
                  num_context({{"lo", lo}, {"hi", hi}}));
    }
    const Fate fate = shoot_once(rhs, hi, h, horizon);
    if (fate == Fate::Crosses) break;
    if (fate == Fate::Undecided) {
      hovering = hi;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  while (!hovering && hi - lo > 4.0 * eps * hi) {
    if (++iterations > 400) break;
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    switch (shoot_once(rhs, mid, h, horizon)) {
      case Fate::Crosses: hi = mid; break;
      case Fate::Turns: lo = mid; break;
      case Fate::Undecided: hovering = mid; break;
    }
  }

  if (hovering) {
    // The trajectory shadows the homoclinic for the whole window; certify a
    // bracket of relative width tol/2 around it.
    const double m = *hovering;
    const double up = m * (1.0 + tol / 4.0);
    const double down = m * (1.0 - tol / 4.0);
    const Fate fu = shoot_once(rhs, up, h, horizon);
    const Fate fd = shoot_once(rhs, down, h, horizon);
    iterations += 2;
    if (fu != Fate::Crosses || fd != Fate::Turns) {
      throw Error(ErrorCode::NoConvergence,
                  "bracket could not be certified within t_max; increase t_max",
                  num_context({{"lo", down}, {"hi", up}, {"t_max", t_max}}));
    }
    lo = std::max(lo, down);
    hi = std::min(hi, up);
  }

  const double peak = hovering ? *hovering : lo + (hi - lo) / 2.0;
  if (hi - lo > tol * peak) {
    throw Error(ErrorCode::NoConvergence, "bisection bracket wider than tol",
                num_context({{"lo", lo}, {"hi", hi}}));
  }

  // Final trajectory on the output grid; once it departs from the orbit
  // (turns or crosses zero) the tail is replaced by the linear decay e^{-lambda t}
  // anchored well before the departure.
  const auto half = static_cast<Eigen::Index>(std::llround(t_max / dt));
  Eigen::VectorXd forward(half + 1);
  forward(0) = peak;
  State s{peak, 0.0};
  Eigen::Index departed = -1;
  const auto last = std::max(half, static_cast<Eigen::Index>(std::ceil(horizon / dt)));
  for (Eigen::Index i = 1; i <= last; ++i) {
    for (int k = 0; k < substeps; ++k) s = rhs.step(s, h);
    if (s.w <= 0.0 || s.v > 0.0) {
      departed = i;
      break;
    }
    if (i <= half) forward(i) = s.w;
  }
  if (departed > 0 && departed - std::log(1e4) / (2.0 * lam * dt) <= static_cast<double>(half)) {
    const double back = std::log(1e4) / (2.0 * lam);
    auto anchor = static_cast<Eigen::Index>(
        std::floor(static_cast<double>(departed) - back / dt));
    anchor = std::clamp<Eigen::Index>(anchor, 1, departed - 1);
    for (Eigen::Index i = anchor + 1; i <= half; ++i) {
      forward(i) = forward(anchor) * std::exp(-lam * static_cast<double>(i - anchor) * dt);
    }
  }

  ShootResult result;
  result.peak = peak;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.iterations = iterations;
  result.profile.params = params;
  result.profile.dt = dt;
  result.profile.t0 = -static_cast<double>(half) * dt;
  result.profile.values.resize(2 * half + 1);
  for (Eigen::Index i = 0; i <= half; ++i) {
    result.profile.values(half + i) = forward(i);
    result.profile.values(half - i) = forward(i);
  }
  return result;
}

double residual_autonomous(const LogGridProfile& profile, ResidualMode mode) {
  const Eigen::Index n = profile.size();
  if (n < 5) {
    throw Error(ErrorCode::TooShort, "residual needs at least 5 samples",
                num_context({{"n", static_cast<double>(n)}}));
  }
  const double lam2 = profile.params.lambda * profile.params.lambda;
  const double pm2 = profile.params.p - 2.0;
  const auto& w = profile.values;
  auto nonlinear = [&](double x) { return std::pow(std::abs(x), pm2) * x; };

  const bool analytic = mode == ResidualMode::Analytic ||
                        (mode == ResidualMode::Auto && profile.form.has_value());
  double worst = 0.0;
  if (analytic) {
    if (!profile.form) {
      throw Error(ErrorCode::InvalidArgument, "analytic residual needs an ExtremalForm");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = std::abs(profile.form->w_tt(profile.t(i)) - lam2 * w(i) + nonlinear(w(i)));
      if (!(r <= worst)) worst = r;
    }
    return worst;
  }
  const double inv = 1.0 / (12.0 * profile.dt * profile.dt);
  for (Eigen::Index i = 2; i < n - 2; ++i) {
    const double w_tt =
        (-w(i - 2) + 16.0 * w(i - 1) - 30.0 * w(i) + 16.0 * w(i + 1) - w(i + 2)) * inv;
    const double r = std::abs(w_tt - lam2 * w(i) + nonlinear(w(i)));
    if (!(r <= worst)) worst = r;
  }
  return worst;
}

MonotonicityReport spherical_average_monotone(const LogGridProfile& profile) {
  MonotonicityReport report;
  const double lam = profile.params.lambda;
  report.expected = profile.params.n_prime >= 2.0 ? Direction::Decreasing : Direction::Increasing;
  const Eigen::Index n = profile.size();

  if ((profile.values.array() == 0.0).all()) {
    report.expected = Direction::Constant;
    report.monotone = true;
    report.flux_nonincreasing = true;
    return report;
  }

  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = std::exp(-lam * profile.t(i)) * profile.values(i);
  const double sign = report.expected == Direction::Decreasing ? 1.0 : -1.0;
  bool monotone = true;
  double worst = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double rise = sign * (u(i + 1) - u(i));
    const double allowance = 1e-12 * std::max(std::abs(u(i)), std::abs(u(i + 1))) + 1e-300;
    if (rise > allowance) {
      monotone = false;
      worst = std::max(worst, rise / std::max(std::abs(u(i)), std::abs(u(i + 1))));
    }
  }

  const Eigen::VectorXd w_t = numerics::derivative4(profile.values, profile.dt);
  Eigen::VectorXd flux(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    flux(i) = std::exp(lam * profile.t(i)) * (w_t(i) - lam * profile.values(i));
  }
  const double scale = flux.cwiseAbs().maxCoeff();
  bool flux_ok = true;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double rise = flux(i + 1) - flux(i);
    if (rise > 1e-8 * scale) {
      flux_ok = false;
      worst = std::max(worst, rise / scale);
    }
  }
  report.monotone = monotone;
  report.flux_nonincreasing = flux_ok;
  report.max_violation = worst;
  return report;
}

LiouvilleVerdict liouville_hardy_endpoint(const CknParams& params) {
  if (params.gap != 1.0 || !(params.a < params.a_c)) {
    throw Error(ErrorCode::WrongRegime, "Hardy endpoint case needs b = a + 1 and a < a_c",
                num_context({{"a", params.a}, {"b", params.b}, {"a_c", params.a_c}}));
  }
  // mu^2 + B mu + 1 = 0 with B = N' - 2 = 2 lambda > 0
  const double B = params.n_prime - 2.0;
  const double disc = B * B - 4.0;
  LiouvilleVerdict verdict;
  verdict.which = LiouvilleCase::HardyEndpoint;
  if (disc < 0.0) {
    const double re = -B / 2.0;
    const double im = std::sqrt(-disc) / 2.0;
    verdict.roots = std::pair{std::complex<double>(re, im), std::complex<double>(re, -im)};
  } else {
    const double q = -(B + std::sqrt(disc)) / 2.0;
    verdict.roots = std::pair{std::complex<double>(q, 0.0), std::complex<double>(1.0 / q, 0.0)};
  }
  // Oscillatory roots forbid positivity; real roots are both negative, so
  // every nonzero solution is unbounded as t -> -infinity.
  verdict.conclusion = LiouvilleConclusion::OnlyZero;
  return verdict;
}

LiouvilleVerdict liouville_critical_a(const CknParams& params, const LogGridProfile& probe,
                                      double tol) {
  if (params.a != params.a_c) {
    throw Error(ErrorCode::WrongRegime, "critical case needs a = a_c",
                num_context({{"a", params.a}, {"a_c", params.a_c}}));
  }
  validate(probe);
  LiouvilleVerdict verdict;
  verdict.which = LiouvilleCase::CriticalA;
  const auto& y = probe.values;
  const Eigen::Index n = probe.size();

  if ((y.array() <= tol).all()) {
    verdict.conclusion = LiouvilleConclusion::OnlyZero;
    return verdict;
  }
  verdict.conclusion = LiouvilleConclusion::Inconclusive;

  // Differential inequality y_tt + y^{p-1} <= 0, checked with 4th-order
  // differences; the allowance absorbs the O(dt^4) truncation.
  const double inv = 1.0 / (12.0 * probe.dt * probe.dt);
  const double allowance = tol + 1e-6 * y.cwiseAbs().maxCoeff();
  LiouvilleWitness violation;
  double worst = allowance;
  bool violated = false;
  for (Eigen::Index i = 2; i < n - 2; ++i) {
    const double y_tt =
        (-y(i - 2) + 16.0 * y(i - 1) - 30.0 * y(i) + 16.0 * y(i + 1) - y(i + 2)) * inv;
    const double excess = y_tt + std::pow(std::abs(y(i)), params.p - 2.0) * y(i);
    if (excess > worst) {
      worst = excess;
      violated = true;
      violation.kind = LiouvilleWitness::Kind::InequalityViolated;
      violation.node = i;
      violation.t = probe.t(i);
      violation.value = excess;
    }
  }
  if (violated) {
    verdict.witness = violation;
    return verdict;
  }

  // The probe is concave; extending the steepest secant gives a point where
  // it must turn negative, contradicting nonnegativity on all of R.
  const Eigen::VectorXd y_t = numerics::derivative4(y, probe.dt);
  Eigen::Index steepest = 0;
  y_t.cwiseAbs().maxCoeff(&steepest);
  LiouvilleWitness secant;
  secant.kind = LiouvilleWitness::Kind::SecantCrossing;
  secant.node = steepest;
  secant.t = probe.t(steepest);
  secant.value = y(steepest);
  secant.slope = y_t(steepest);
  secant.crossing_t = secant.slope != 0.0 ? secant.t - secant.value / secant.slope
                                          : std::numeric_limits<double>::infinity();
  verdict.witness = secant;
  return verdict;
}

}  // namespace ckn
