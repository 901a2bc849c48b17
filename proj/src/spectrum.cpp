#include "ckn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ckn/error.hpp"
#include "ckn/radial.hpp"

namespace ckn {

namespace {

constexpr double kAsymptoteTol = 1e-10;

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

}  // namespace

ModeOperator build_mode_operator(const LogGridProfile& extremal, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "harmonic level k must be nonnegative");
  validate(extremal);
  // The residual is measured against the size of the linear term so that
  // large amplitudes (p close to 2) are judged on the same footing.
  const double residual = residual_autonomous(extremal);
  const double lam2 = extremal.params.lambda * extremal.params.lambda;
  const double scale = std::max(1.0, lam2 * extremal.values.cwiseAbs().maxCoeff());
  if (!(residual <= 1e-8 * scale)) {
    throw Error(ErrorCode::UnverifiedProfile, "profile is not a verified homoclinic",
                num_context({{"residual", residual}, {"scale", scale}}));
  }
  ModeOperator op;
  op.k = k;
  op.params = extremal.params;
  op.lambda_k = static_cast<double>(k) * (k + extremal.params.N - 2.0);
  op.t0 = extremal.t0;
  op.dt = extremal.dt;
  const double pm2 = op.params.p - 2.0;
  const double base = op.asymptote();
  op.potential = extremal.values.unaryExpr([&](double w) {
    return base - (op.params.p - 1.0) * std::pow(std::abs(w), pm2);
  });
  return op;
}

SymTridiagonal<double> discretize(const ModeOperator& op) {
  const Eigen::Index m = op.size() - 2;
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "mode operator grid too short");
  const double inv = 1.0 / (op.dt * op.dt);
  Eigen::VectorXd diag = op.potential.segment(1, m).array() + 2.0 * inv;
  Eigen::VectorXd off = Eigen::VectorXd::Constant(m - 1, -inv);
  return {std::move(diag), std::move(off)};
}

EigenReport mode_eigenpair(const ModeOperator& op, int index) {
  const Eigen::Index n = op.size();
  const double asym = op.asymptote();
  const double dev = std::max(std::abs(op.potential(0) - asym), std::abs(op.potential(n - 1) - asym));
  if (!(dev <= kAsymptoteTol)) {
    throw Error(ErrorCode::NotConverged, "potential has not reached its asymptote at the grid ends",
                num_context({{"deviation", dev}, {"half_width", 0.5 * (n - 1) * op.dt}}));
  }
  const SymTridiagonal<double> T = discretize(op);
  EigenReport report;
  report.k = op.k;
  report.dx = op.dt;
  report.truncation = 0.5 * static_cast<double>(n - 1) * op.dt;
  report.mu_fd = T.eigenvalue(index);
  if (!std::isfinite(report.mu_fd)) {
    throw Error(ErrorCode::NotConverged, "eigenvalue bisection failed");
  }
  const Eigen::VectorXd inner = T.eigenvector(report.mu_fd);

  // D2 phi with homogeneous Dirichlet values outside the interior block.
  const Eigen::Index m = inner.size();
  double d2_sq = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double left = i > 0 ? inner(i - 1) : 0.0;
    const double right = i + 1 < m ? inner(i + 1) : 0.0;
    const double d2 = left - 2.0 * inner(i) + right;
    d2_sq += d2 * d2;
  }
  report.mu = report.mu_fd + d2_sq / (12.0 * op.dt * op.dt * inner.squaredNorm());
  report.eigenvector = Eigen::VectorXd::Zero(n);
  report.eigenvector.segment(1, n - 2) = inner / std::sqrt(op.dt);
  return report;
}

LogGridProfile spectral_extremal(const CknParams& params, const SpectrumGrid& grid) {
  const ExtremalForm form = extremal_form(params);
  const double gamma = std::abs(form.rate);
  // (p-1) w^{p-2} = (p-1) (p lambda^2/2) sech^2(gamma t) <= 4 c e^{-2 gamma t}
  const double c = (params.p - 1.0) * params.p * params.lambda * params.lambda / 2.0;
  const double needed = std::log(4.0 * c / (0.1 * kAsymptoteTol)) / (2.0 * gamma);
  const double half_width = std::max(grid.half_width, needed);
  const double dx = gamma > 5.0 ? std::min(grid.dx, 0.05 / gamma) : grid.dx;
  return sample_extremal(params, form, half_width, dx);
}

double fs_mode_eigenvalue(const CknParams& params, const SpectrumGrid& grid) {
  if (!(params.a < params.a_c) || !(params.p > 2.0) || params.gap <= 0.0) {
    throw Error(ErrorCode::DegenerateParams, "k = 1 analysis needs a < a_c and a < b < a + 1",
                num_context({{"a", params.a}, {"b", params.b}}));
  }
  const LogGridProfile extremal = spectral_extremal(params, grid);
  return principal_eigenvalue(build_mode_operator(extremal, 1)).mu;
}

double find_fs_threshold(int N, double a, double tol, const SpectrumGrid& grid) {
  if (!(a < 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "threshold search is defined for a < 0",
                num_context({{"a", a}}));
  }
  if (!(tol >= 1e-6)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be at least 1e-6",
                num_context({{"tol", tol}}));
  }
  // Both ends stay strictly inside (a, a+1): near b = a the extremal is sharply
  // peaked (p -> infinity for N = 2), near b = a + 1 it spreads out (p -> 2).
  double lo = a + (N >= 3 ? 1e-3 : 1e-2);
  double hi = a + 0.98;
  const double mu_lo = fs_mode_eigenvalue(make_params(N, a, lo), grid);
  const double mu_hi = fs_mode_eigenvalue(make_params(N, a, hi), grid);
  if (!(mu_lo < 0.0 && mu_hi > 0.0)) {
    throw Error(ErrorCode::NoSignChange, "k = 1 eigenvalue does not change sign on the bracket",
                num_context({{"b_lo", lo}, {"mu_lo", mu_lo}, {"b_hi", hi}, {"mu_hi", mu_hi}}));
  }
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (fs_mode_eigenvalue(make_params(N, a, mid), grid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2.0;
}

}  // namespace ckn
