#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ckn/energy.hpp"
#include "ckn/error.hpp"

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

LogGridProfile extremal(const CknParams& q, double dt = 0.01) {
  return sample_extremal(q, extremal_form(q), 40.0, dt);
}

}  // namespace

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * M_PI));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI));
}

TEST_CASE("Sobolev bubble energies") {
  const EnergyReport e = energy_report(extremal(make_params(3, 0.0, 0.0)));
  // int |grad u|^2 for u = 3^{1/4} (1 + r^2)^{-1/2} in R^3
  const double grad = 3.0 * std::sqrt(3.0) * M_PI * M_PI / 4.0;
  CHECK(e.grad_sq == doctest::Approx(grad).epsilon(1e-9));
  CHECK(e.lp == doctest::Approx(grad).epsilon(1e-9));
  // sharp Sobolev constant S_3 = 3 (pi/2)^{4/3}
  CHECK(e.quotient == doctest::Approx(3.0 * std::pow(M_PI / 2.0, 4.0 / 3.0)).epsilon(1e-9));
  CHECK(e.omega_n == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("Euler-Lagrange identity across parameters") {
  for (auto [N, a, b] : {std::tuple{3, -1.0, -0.2}, {2, -0.5, 0.0}, {5, 0.7, 1.1}, {4, -2.0, -1.9}}) {
    // the derivative stencil error scales with (rate * dt)^4
    const CknParams q = make_params(N, a, b);
    const EnergyReport e = energy_report(extremal(q, 0.01 / std::max(1.0, extremal_form(q).rate)));
    CHECK(e.grad_sq == doctest::Approx(e.lp).epsilon(1e-8));
  }
}

TEST_CASE("Hardy integral against the closed form in w") {
  // int sech^{2 beta}(gamma t) dt = B(1/2, beta) / gamma
  const CknParams q = make_params(3, -1.0, -0.5);
  const ExtremalForm f = extremal_form(q);
  const EnergyReport e = energy_report(extremal(q));
  const double beta = f.sech_power;
  const double beta_fn = std::exp(std::lgamma(0.5) + std::lgamma(beta) - std::lgamma(beta + 0.5));
  CHECK(e.hardy_lhs ==
        doctest::Approx(sphere_area(3) * f.amplitude * f.amplitude * beta_fn / f.rate).epsilon(1e-9));

  const HardyReport h = hardy_check(extremal(q));
  CHECK(h.lhs <= h.sharp_bound);
  CHECK(h.lhs <= h.rhs);
}

TEST_CASE("r-space quadratures match the w-space integrals") {
  const CknParams q = make_params(3, -0.4, 0.1);
  const LogGridProfile p = extremal(q);
  const EnergyReport e = energy_report(p);
  CHECK(radial_lp(p) == doctest::Approx(e.lp).epsilon(1e-8));
  CHECK(radial_grad_sq(p) == doctest::Approx(e.grad_sq).epsilon(1e-8));
  const DualEnergy d = verify_dual_energy(p);
  CHECK(d.lp_dual == doctest::Approx(d.lp).epsilon(1e-10));
  CHECK(d.grad_sq_dual == doctest::Approx(d.grad_sq).epsilon(1e-10));
}

TEST_CASE("fourth-order convergence of the gradient energy") {
  const CknParams q = make_params(3, -1.0, -0.2);
  double g[3];
  const double steps[3] = {0.08, 0.04, 0.02};
  for (int i = 0; i < 3; ++i) g[i] = energy_report(extremal(q, steps[i])).grad_sq;
  CHECK((g[0] - g[1]) / (g[1] - g[2]) == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("scaling leaves every integral unchanged") {
  const LogGridProfile p = extremal(make_params(4, -0.5, 0.2));
  const EnergyReport e0 = energy_report(p);
  const EnergyReport e1 = energy_report(scale_profile(p, 0.01));
  CHECK(e1.grad_sq == doctest::Approx(e0.grad_sq).epsilon(1e-12));
  CHECK(e1.quotient == doctest::Approx(e0.quotient).epsilon(1e-12));
}

TEST_CASE("decay and weighted bound") {
  const CknParams q = make_params(4, -1.0, -0.6);
  const LogGridProfile p = extremal(q);
  CHECK(decay_fit(p, {15.0, 25.0}) == doctest::Approx(-2.0 * q.lambda).epsilon(1e-3));
  const double bound = weighted_sup(p);
  // u r^{lambda} is w, whose supremum is the peak
  CHECK(bound == doctest::Approx(extremal_form(q).amplitude).epsilon(1e-12));
}

TEST_CASE("energy guards") {
  const CknParams q = make_params(3, 0.0, 0.0);
  const LogGridProfile narrow = sample_extremal(q, extremal_form(q), 3.0, 0.01);
  CHECK(code_of([&] { energy_report(narrow); }) == ErrorCode::TailNotDecayed);
  const LogGridProfile p = extremal(q);
  CHECK(code_of([&] { decay_fit(p, {30.0, 50.0}); }) == ErrorCode::WindowOutOfGrid);
  CHECK(code_of([] {
          const CknParams c = make_params(3, 0.5, 0.75);
          LogGridProfile z;
          z.params = c;
          z.dt = 0.1;
          z.values = Eigen::VectorXd::Zero(40);
          hardy_check(z);
        }) == ErrorCode::CriticalA);
}
