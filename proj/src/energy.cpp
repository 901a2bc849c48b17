#include "ckn/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ckn/error.hpp"
#include "ckn/numerics.hpp"

namespace ckn {

namespace {

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

void require_decayed_tails(const LogGridProfile& profile) {
  const double peak = profile.values.cwiseAbs().maxCoeff();
  const double left = std::abs(profile.values(0));
  const double right = std::abs(profile.values(profile.size() - 1));
  if (peak > 0.0 && (left > 1e-6 * peak || right > 1e-6 * peak)) {
    throw Error(ErrorCode::TailNotDecayed, "profile tails have not decayed",
                num_context({{"left", left}, {"right", right}, {"peak", peak}}));
  }
}

// Integrates f(r) over [r_lo, r_hi] with 8-point Gauss-Legendre on
// geometrically growing panels (ratio e^{1/8}).
template <typename F>
double radial_quadrature(double t_lo, double t_hi, F&& f) {
  static const auto rule = numerics::gauss_legendre(8);
  const auto& [nodes, weights] = rule;
  const double panel = 0.125;
  const auto panels = static_cast<long>(std::ceil((t_hi - t_lo) / panel));
  const double step = (t_hi - t_lo) / static_cast<double>(panels);
  double total = 0.0;
  for (long j = 0; j < panels; ++j) {
    const double r0 = std::exp(t_lo + static_cast<double>(j) * step);
    const double r1 = std::exp(t_lo + static_cast<double>(j + 1) * step);
    const double half = 0.5 * (r1 - r0);
    const double mid = 0.5 * (r1 + r0);
    double s = 0.0;
    for (Eigen::Index q = 0; q < nodes.size(); ++q) s += weights(q) * f(mid + half * nodes(q));
    total += half * s;
  }
  return total;
}

}  // namespace

double sphere_area(int N) {
  return 2.0 * std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0);
}

EnergyReport energy_report(const LogGridProfile& profile) {
  validate(profile);
  require_decayed_tails(profile);
  const CknParams& q = profile.params;
  // r-exponents of the three integrands after t = ln r, u = e^{-lambda t} w.
  const double grad_power = -2.0 * q.a - 2.0 * q.lambda - 2.0 + q.N;
  const double lp_power = q.N - q.b * q.p - q.lambda * q.p;
  const double tol = 1e-12 * (q.N + std::abs(q.b * q.p) + std::abs(q.lambda * q.p));
  if (std::abs(grad_power) > tol || std::abs(lp_power) > tol) {
    throw Error(ErrorCode::InvalidArgument, "weight exponents do not cancel",
                num_context({{"grad_power", grad_power}, {"lp_power", lp_power}}));
  }

  const auto& w = profile.values;
  const Eigen::VectorXd w_t = numerics::derivative4(w, profile.dt);
  EnergyReport report;
  report.omega_n = sphere_area(q.N);
  const Eigen::VectorXd grad = (w_t - q.lambda * w).array().square();
  const Eigen::VectorXd lp = w.array().abs().pow(q.p);
  const Eigen::VectorXd hardy = w.array().square();
  report.grad_sq = report.omega_n * numerics::simpson(grad, profile.dt);
  report.lp = report.omega_n * numerics::simpson(lp, profile.dt);
  report.hardy_lhs = report.omega_n * numerics::simpson(hardy, profile.dt);
  report.quotient = report.lp > 0.0 ? report.grad_sq / std::pow(report.lp, 2.0 / q.p) : 0.0;
  return report;
}

double radial_lp(const LogGridProfile& profile) {
  const CknParams& q = profile.params;
  const double omega = sphere_area(q.N);
  return omega * radial_quadrature(profile.t0, profile.t_end(), [&](double r) {
           const double u = to_radial_u(profile, r);
           return std::pow(r, q.N - 1.0 - q.b * q.p) * std::pow(std::abs(u), q.p);
         });
}

double radial_grad_sq(const LogGridProfile& profile) {
  validate(profile);
  const CknParams& q = profile.params;
  const double omega = sphere_area(q.N);
  const Eigen::VectorXd w_t = numerics::derivative4(profile.values, profile.dt);
  const double n1 = static_cast<double>(profile.size() - 1);
  return omega * radial_quadrature(profile.t0, profile.t_end(), [&](double r) {
           const double t = std::log(r);
           const double s = std::clamp((t - profile.t0) / profile.dt, 0.0, n1);
           const double w = numerics::cubic_at(profile.values, s);
           const double dw = numerics::cubic_at(w_t, s);
           const double du = std::exp(-(q.lambda + 1.0) * t) * (dw - q.lambda * w);
           return std::pow(r, q.N - 1.0 - 2.0 * q.a) * du * du;
         });
}

DualEnergy verify_dual_energy(const LogGridProfile& profile) {
  validate(profile);
  const LogGridProfile dual = dualize_profile(profile);
  DualEnergy out;
  out.lp = radial_lp(profile);
  out.lp_dual = radial_lp(dual);
  out.grad_sq = radial_grad_sq(profile);
  out.grad_sq_dual = radial_grad_sq(dual);
  return out;
}

HardyReport hardy_check(const LogGridProfile& profile) {
  if (profile.params.lambda == 0.0) {
    throw Error(ErrorCode::CriticalA, "Hardy constant degenerates at a = a_c",
                num_context({{"a", profile.params.a}}));
  }
  const EnergyReport e = energy_report(profile);
  HardyReport report;
  report.lhs = e.hardy_lhs;
  report.rhs = e.grad_sq + 1.0;
  report.sharp_bound = e.grad_sq / (profile.params.lambda * profile.params.lambda);
  return report;
}

double decay_fit(const LogGridProfile& profile, std::pair<double, double> window) {
  validate(profile);
  const auto [lo, hi] = window;
  if (!(lo < hi) || lo < profile.t0 || hi > profile.t_end()) {
    throw Error(ErrorCode::WindowOutOfGrid, "fit window must lie inside the grid",
                num_context({{"lo", lo}, {"hi", hi}, {"grid_lo", profile.t0},
                             {"grid_hi", profile.t_end()}}));
  }
  const auto first = static_cast<Eigen::Index>(std::ceil((lo - profile.t0) / profile.dt - 1e-9));
  const auto last = static_cast<Eigen::Index>(std::floor((hi - profile.t0) / profile.dt + 1e-9));
  if (last - first < 1) {
    throw Error(ErrorCode::WindowOutOfGrid, "fit window holds fewer than two nodes");
  }
  const Eigen::Index m = last - first + 1;
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = profile.t(first + i);
    const double w = profile.values(first + i);
    if (!(w > 0.0)) {
      throw Error(ErrorCode::NonpositiveValues, "u must be positive on the fit window",
                  num_context({{"t", t}, {"w", w}}));
    }
    design(i, 0) = 1.0;
    design(i, 1) = t;
    rhs(i) = std::log(w) - profile.params.lambda * t;  // ln u
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return coef(1);
}

double weighted_sup(const LogGridProfile& profile) {
  return profile.values.cwiseAbs().maxCoeff();
}

}  // namespace ckn
