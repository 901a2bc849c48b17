#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "ckn/tridiagonal.hpp"

using ckn::SymTridiagonal;

namespace {

Eigen::MatrixXd dense(const SymTridiagonal<double>& t) {
  const Eigen::Index n = t.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.diagonal() = t.diag();
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = t.off()(i);
  return m;
}

SymTridiagonal<double> random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Eigen::VectorXd d(n), e(n - 1);
  for (auto& x : d) x = u(rng);
  for (auto& x : e) x = u(rng);
  return {d, e};
}

}  // namespace

TEST_CASE("eigenvalues agree with Eigen's dense solver") {
  for (int n : {1, 2, 5, 40, 200}) {
    const auto t = n == 1 ? SymTridiagonal<double>(Eigen::VectorXd::Constant(1, 2.5), Eigen::VectorXd(0))
                          : random_matrix(n, 11u + n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(dense(t));
    const double scale = ref.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j) {
      CHECK(std::abs(t.eigenvalue(j) - ref.eigenvalues()(j)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("eigenvector satisfies the eigen equation") {
  const auto t = random_matrix(60, 5);
  const Eigen::MatrixXd m = dense(t);
  for (Eigen::Index j : {0, 1, 30, 59}) {
    const double mu = t.eigenvalue(j);
    const Eigen::VectorXd v = t.eigenvector(mu);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((m * v - mu * v).norm() < 1e-9);
  }
}

TEST_CASE("Sturm count is the inertia") {
  const auto t = random_matrix(30, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(dense(t));
  for (double x : {-10.0, -1.0, 0.0, 0.7, 10.0}) {
    const auto expected = (ref.eigenvalues().array() < x).count();
    CHECK(t.count_below(x) == expected);
  }
  const auto [lo, hi] = t.gershgorin();
  CHECK(lo <= ref.eigenvalues().minCoeff());
  CHECK(hi >= ref.eigenvalues().maxCoeff());
}

TEST_CASE("discrete Laplacian has its closed-form spectrum") {
  const int n = 100;
  const double h = 1.0 / (n + 1);
  const SymTridiagonal<double> t(Eigen::VectorXd::Constant(n, 2.0 / (h * h)),
                                 Eigen::VectorXd::Constant(n - 1, -1.0 / (h * h)));
  for (int j = 0; j < 5; ++j) {
    const double s = std::sin((j + 1) * M_PI * h / 2.0);
    CHECK(t.eigenvalue(j) == doctest::Approx(4.0 * s * s / (h * h)).epsilon(1e-13));
  }
  // ground state is sin(pi x), positive
  const Eigen::VectorXd v = t.eigenvector(t.eigenvalue(0));
  CHECK(v.minCoeff() > 0.0);
  CHECK(v(n / 2) == doctest::Approx(std::sqrt(2.0 * h)).epsilon(1e-3));
}

TEST_CASE("works in long double") {
  using L = long double;
  Eigen::Matrix<L, Eigen::Dynamic, 1> d(3), e(2);
  d << 2, 2, 2;
  e << -1, -1;
  const SymTridiagonal<L> t(d, e);
  CHECK(static_cast<double>(t.eigenvalue(0)) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("bad shapes are rejected") {
  CHECK_THROWS(SymTridiagonal<double>(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)));
  const auto t = random_matrix(4, 1);
  CHECK_THROWS(t.eigenvalue(4));
}
