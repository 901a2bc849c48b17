#include <doctest.h>

#include <cmath>

#include "ckn/error.hpp"
#include "ckn/spectrum.hpp"

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

// The mode potential -(p-1) w^{p-2} of the sech extremal is a Poschl-Teller
// well; its bound states are known in closed form.
double ground_state(const CknParams& q, double lambda_k) {
  const double lam2 = q.lambda * q.lambda;
  return lam2 + lambda_k - q.p * q.p * lam2 / 4.0;
}

int sign_changes(const Eigen::VectorXd& v) {
  const double floor = 1e-6 * v.cwiseAbs().maxCoeff();
  int changes = 0;
  double last = 0.0;
  for (double x : v) {
    if (std::abs(x) < floor) continue;
    if (last != 0.0 && (x > 0) != (last > 0)) ++changes;
    last = x;
  }
  return changes;
}

}  // namespace

TEST_CASE("Poschl-Teller ground states") {
  for (auto [N, a, b] : {std::tuple{3, 0.0, 0.0}, {3, -1.0, -0.5}, {5, 0.3, 0.8}, {2, -0.5, 0.0}}) {
    const CknParams q = make_params(N, a, b);
    const LogGridProfile w = spectral_extremal(q);
    for (int k : {0, 1, 2}) {
      const ModeOperator op = build_mode_operator(w, k);
      CHECK(op.lambda_k == doctest::Approx(k * (k + N - 2.0)));
      const EigenReport e = principal_eigenvalue(op);
      CHECK(e.mu == doctest::Approx(ground_state(q, op.lambda_k)).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("translation mode sits at zero") {
  const CknParams q = make_params(4, -0.5, 0.0);
  const ModeOperator op = build_mode_operator(spectral_extremal(q), 0);
  const EigenReport e = mode_eigenpair(op, 1);
  CHECK(std::abs(e.mu) < 1e-8);
  // its eigenfunction is w_t: odd, one sign change
  CHECK(sign_changes(e.eigenvector) == 1);
}

TEST_CASE("eigenvectors obey Sturm oscillation and normalization") {
  const CknParams q = make_params(3, -1.0, -0.5);
  const ModeOperator op = build_mode_operator(spectral_extremal(q), 1);
  for (int j = 0; j < 4; ++j) {
    const EigenReport e = mode_eigenpair(op, j);
    CHECK(sign_changes(e.eigenvector) == j);
    CHECK(e.eigenvector.squaredNorm() * e.dx == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(e.eigenvector(0) == 0.0);
    CHECK(e.eigenvector(e.eigenvector.size() - 1) == 0.0);
  }
}

TEST_CASE("harmonic levels shift the spectrum rigidly") {
  const CknParams q = make_params(3, -1.0, -0.5);
  const LogGridProfile w = spectral_extremal(q);
  const ModeOperator op0 = build_mode_operator(w, 0);
  const ModeOperator op3 = build_mode_operator(w, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(mode_eigenpair(op3, j).mu - mode_eigenpair(op0, j).mu ==
          doctest::Approx(12.0).epsilon(1e-11));
  }
}

TEST_CASE("flat potential is a particle in a box") {
  const CknParams q = make_params(3, 0.0, 0.0);
  for (double dx : {0.02, 0.01}) {
    ModeOperator op;
    op.params = q;
    op.k = 0;
    op.dt = dx;
    op.t0 = -5.0;
    op.potential = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(10.0 / dx) + 1, op.asymptote());
    const double L = 10.0;
    for (int j = 0; j < 3; ++j) {
      const double exact = op.asymptote() + std::pow((j + 1) * M_PI / L, 2);
      const EigenReport e = mode_eigenpair(op, j);
      CHECK(e.mu == doctest::Approx(exact).epsilon(1e-9));
      // raw three-point value: 4/dx^2 sin^2(j pi dx / 2L)
      const double s = std::sin((j + 1) * M_PI * dx / (2.0 * L));
      CHECK(e.mu_fd == doctest::Approx(op.asymptote() + 4.0 * s * s / (dx * dx)).epsilon(1e-12));
    }
  }
}

TEST_CASE("uncorrected eigenvalue converges at second order") {
  const CknParams q = make_params(3, -1.0, -0.5);
  const double exact = ground_state(q, 2.0);
  double err[3];
  const double steps[3] = {0.04, 0.02, 0.01};
  for (int i = 0; i < 3; ++i) {
    const ModeOperator op = build_mode_operator(spectral_extremal(q, {40.0, steps[i]}), 1);
    const EigenReport e = principal_eigenvalue(op);
    err[i] = e.mu_fd - exact;
    CHECK(std::abs(e.mu - exact) < std::abs(err[i]));
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("symmetry-breaking threshold") {
  const double b = find_fs_threshold(3, -1.0, 1e-6);
  CHECK(std::abs(b - b_fs(3, -1.0)) < 1e-4);
  CHECK(fs_mode_eigenvalue(make_params(3, -1.0, -0.8)) < 0.0);
  CHECK(fs_mode_eigenvalue(make_params(3, -1.0, -0.2)) > 0.0);
}

TEST_CASE("spectral guards") {
  const CknParams q = make_params(3, 0.0, 0.0);
  const LogGridProfile w = spectral_extremal(q);
  CHECK(code_of([&] { build_mode_operator(w, -1); }) == ErrorCode::InvalidArgument);

  LogGridProfile bent = w;
  bent.values(bent.size() / 2) *= 1.001;
  CHECK(code_of([&] { build_mode_operator(bent, 0); }) == ErrorCode::UnverifiedProfile);

  const LogGridProfile narrow = sample_extremal(q, extremal_form(q), 5.0, 0.01);
  CHECK(code_of([&] { mode_eigenpair(build_mode_operator(narrow, 0), 0); }) ==
        ErrorCode::NotConverged);

  CHECK(code_of([] { find_fs_threshold(3, 0.1, 1e-6); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([] { find_fs_threshold(3, -1.0, 1e-9); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { fs_mode_eigenvalue(make_params(3, 0.5, 1.0)); }) == ErrorCode::DegenerateParams);
}

TEST_CASE("potential is flat at the default truncation") {
  const CknParams q = make_params(3, 0.0, 0.0);
  const ModeOperator op = build_mode_operator(sample_extremal(q, extremal_form(q), 40.0, 0.01), 0);
  CHECK(std::abs(op.potential(0) - op.asymptote()) < 1e-12);
  CHECK(std::abs(op.potential(op.size() - 1) - op.asymptote()) < 1e-12);
}

TEST_CASE("k = 1 eigenvalue increases with b") {
  for (auto [N, a] : {std::pair{3, -1.0}, {2, -0.5}, {4, -2.0}}) {
    double previous = -HUGE_VAL;
    for (int i = 1; i < 10; ++i) {
      const double mu = fs_mode_eigenvalue(make_params(N, a, a + 0.1 * i));
      CHECK(mu > previous);
      previous = mu;
    }
  }
}
