#include <doctest.h>

#include <cmath>

#include "ckn/error.hpp"
#include "ckn/radial.hpp"

using namespace ckn;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ckn::Error");
  return ErrorCode::InvalidArgument;
}

LogGridProfile extremal(const CknParams& q, double half = 40.0, double dt = 0.01) {
  return sample_extremal(q, extremal_form(q), half, dt);
}

}  // namespace

TEST_CASE("RK4 conserves the first integral to fourth order") {
  const CknParams q = make_params(3, 0.0, 0.3);
  // periodic orbit around the nonzero equilibrium
  const double w_eq = std::pow(q.lambda * q.lambda, 1.0 / (q.p - 2.0));
  double drift[2];
  const double steps[2] = {0.02, 0.01};
  for (int i = 0; i < 2; ++i) {
    const OdeRun run = integrate(q, 1.2 * w_eq, 0.0, {0.0, 20.0}, steps[i]);
    const auto& e = run.energy_first_integral;
    drift[i] = (e.array() - e(0)).abs().maxCoeff();
  }
  CHECK(drift[1] < 1e-8);
  CHECK(drift[0] / drift[1] == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("backward integration is stored in increasing t") {
  const CknParams q = make_params(3, 0.0, 0.0);
  const OdeRun run = integrate(q, 0.5, 0.1, {0.0, -3.0}, 0.01);
  CHECK(run.profile.t0 == doctest::Approx(-3.0));
  CHECK(run.profile.t_end() == doctest::Approx(0.0));
  CHECK(run.profile.values(run.profile.size() - 1) == doctest::Approx(0.5));
  CHECK(run.t_final == doctest::Approx(-3.0));
}

TEST_CASE("integration guards") {
  const CknParams q = make_params(3, 0.0, 0.0);
  CHECK(code_of([&] { integrate(q, 1.0, 0.0, {0.0, 1.0}, 0.0); }) == ErrorCode::InvalidStep);
  CHECK(code_of([&] { integrate(q, 1.0, 0.0, {0.0, 0.0}, 0.01); }) == ErrorCode::InvalidStep);
  CHECK(code_of([&] { integrate(q, 50.0, 0.0, {0.0, 10.0}, 0.001); }) == ErrorCode::BlowUp);
}

TEST_CASE("shooting reproduces the closed form without using it") {
  for (auto [N, a, b] : {std::tuple{3, 0.0, 0.0}, {4, -1.0, -0.5}, {2, -0.5, 0.0}}) {
    const CknParams q = make_params(N, a, b);
    const ExtremalForm f = extremal_form(q);
    const ShootResult shot = shoot_homoclinic(q, 30.0, 1e-8);
    CHECK(shot.peak == doctest::Approx(f.amplitude).epsilon(1e-8));
    CHECK(shot.bracket_lo <= shot.peak);
    CHECK(shot.bracket_hi >= shot.peak);
    for (Eigen::Index i = 0; i < shot.profile.size(); i += 97) {
      CHECK(std::abs(shot.profile.values(i) - f.w(shot.profile.t(i))) < 1e-7 * f.amplitude);
    }
  }
  CHECK(code_of([] { shoot_homoclinic(make_params(3, 0.5, 1.0), 30.0, 1e-6); }) ==
        ErrorCode::DegenerateParams);
}

TEST_CASE("residual modes agree on a sampled extremal") {
  const CknParams q = make_params(3, -1.0, -0.2);
  const LogGridProfile p = extremal(q);
  const double scale = q.lambda * q.lambda * p.form->amplitude;
  CHECK(residual_autonomous(p, ResidualMode::Analytic) / scale < 1e-13);
  CHECK(residual_autonomous(p, ResidualMode::FiniteDifference) / scale < 1e-7);
  LogGridProfile bare = p;
  bare.form.reset();
  CHECK(residual_autonomous(bare) == residual_autonomous(p, ResidualMode::FiniteDifference));
  CHECK(code_of([&] { residual_autonomous(bare, ResidualMode::Analytic); }) ==
        ErrorCode::InvalidArgument);
  bare.values(4000) *= 1.01;
  CHECK(residual_autonomous(bare) / scale > 1e-3);
}

TEST_CASE("radial extremals are monotone") {
  const auto r1 = spherical_average_monotone(extremal(make_params(3, -1.0, -0.5)));
  CHECK(r1.monotone);
  CHECK(r1.expected == Direction::Decreasing);
  CHECK(r1.flux_nonincreasing);
  // N' = N - 2a < 2 only in the dual regime
  const auto r2 = spherical_average_monotone(extremal(make_params(3, 1.0, 1.5), 10.0));
  CHECK(r2.expected == Direction::Increasing);
  CHECK(r2.monotone);
}

TEST_CASE("Hardy endpoint roots") {
  const CknParams q = make_params(3, -1.0, 0.0);
  const LiouvilleVerdict v = liouville_hardy_endpoint(q);
  CHECK(v.which == LiouvilleCase::HardyEndpoint);
  CHECK(v.conclusion == LiouvilleConclusion::OnlyZero);
  REQUIRE(v.roots);
  // mu^2 + 3 mu + 1 = 0 for N' = 5
  const double lo = (-3.0 - std::sqrt(5.0)) / 2.0, hi = (-3.0 + std::sqrt(5.0)) / 2.0;
  const double r1 = v.roots->first.real(), r2 = v.roots->second.real();
  CHECK(std::min(r1, r2) == doctest::Approx(lo).epsilon(1e-14));
  CHECK(std::max(r1, r2) == doctest::Approx(hi).epsilon(1e-14));

  // complex pair when N' < 4
  const LiouvilleVerdict c = liouville_hardy_endpoint(make_params(3, 0.25, 1.25));
  CHECK(std::abs(c.roots->first.imag()) > 0.0);
  CHECK(std::abs(c.roots->first * c.roots->second - 1.0) < 1e-14);

  CHECK(code_of([] { liouville_hardy_endpoint(make_params(3, -1.0, -0.5)); }) ==
        ErrorCode::WrongRegime);
}

TEST_CASE("critical-a certificate checker") {
  const CknParams q = make_params(4, 1.0, 1.0);  // a = a_c, p = 4
  LogGridProfile probe;
  probe.params = q;
  probe.t0 = -10.0;
  probe.dt = 0.01;
  probe.values = Eigen::VectorXd::Zero(2001);
  CHECK(liouville_critical_a(q, probe).conclusion == LiouvilleConclusion::OnlyZero);

  for (Eigen::Index i = 0; i < probe.size(); ++i) probe.values(i) = 0.5 / std::cosh(probe.t(i));
  const LiouvilleVerdict v = liouville_critical_a(q, probe);
  CHECK(v.conclusion == LiouvilleConclusion::Inconclusive);
  REQUIRE(v.witness);
  // y'' + y^3 for y = sech/2 is sech/2 (1 - 7 sech^2/4), positive once sech^2 < 4/7
  const double s = 1.0 / std::cosh(v.witness->t);
  CHECK(v.witness->value == doctest::Approx(0.5 * s * (1.0 - 1.75 * s * s)).epsilon(1e-3));
  CHECK(v.witness->value > 0.0);

  CHECK(code_of([] {
          const CknParams off = make_params(4, 0.0, 0.5);
          LogGridProfile p;
          p.params = off;
          p.dt = 0.1;
          p.values = Eigen::VectorXd::Zero(20);
          liouville_critical_a(off, p);
        }) == ErrorCode::WrongRegime);
}
