#pragma once

// Uniform-grid numerics shared by the profile, energy and spectrum code.

#include <Eigen/Dense>
#include <cmath>
#include <utility>

namespace ckn::numerics {

/// First derivative on a uniform grid: 4th-order central stencil in the
/// interior, 4th-order one-sided stencils on the two outermost nodes per side.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> derivative4(
    const Eigen::MatrixBase<Derived>& f, typename Derived::Scalar h) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = f.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d(n);
  if (n < 5) {
    d.setZero();
    return d;
  }
  const Scalar inv12h = Scalar(1) / (Scalar(12) * h);
  for (Eigen::Index i = 2; i < n - 2; ++i) {
    d(i) = (f(i - 2) - Scalar(8) * f(i - 1) + Scalar(8) * f(i + 1) - f(i + 2)) * inv12h;
  }
  d(0) = (-Scalar(25) * f(0) + Scalar(48) * f(1) - Scalar(36) * f(2) + Scalar(16) * f(3) -
          Scalar(3) * f(4)) * inv12h;
  d(1) = (-Scalar(3) * f(0) - Scalar(10) * f(1) + Scalar(18) * f(2) - Scalar(6) * f(3) + f(4)) *
         inv12h;
  d(n - 1) = (Scalar(25) * f(n - 1) - Scalar(48) * f(n - 2) + Scalar(36) * f(n - 3) -
              Scalar(16) * f(n - 4) + Scalar(3) * f(n - 5)) * inv12h;
  d(n - 2) = (Scalar(3) * f(n - 1) + Scalar(10) * f(n - 2) - Scalar(18) * f(n - 3) +
              Scalar(6) * f(n - 4) - f(n - 5)) * inv12h;
  return d;
}

/// Composite Simpson rule on a uniform grid. An odd number of intervals is
/// closed with the 3/8 rule on the last three intervals.
template <typename Derived>
typename Derived::Scalar simpson(const Eigen::MatrixBase<Derived>& f, typename Derived::Scalar h) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = f.size();
  if (n < 2) return Scalar(0);
  if (n == 2) return h * (f(0) + f(1)) / Scalar(2);
  if (n == 3) return h * (f(0) + Scalar(4) * f(1) + f(2)) / Scalar(3);

  Eigen::Index last = n - 1;  // Simpson covers [0, last]
  Scalar tail = Scalar(0);
  if ((n - 1) % 2 == 1) {
    last = n - 4;
    tail = Scalar(3) * h / Scalar(8) *
           (f(n - 4) + Scalar(3) * f(n - 3) + Scalar(3) * f(n - 2) + f(n - 1));
  }
  Scalar odd = 0, even = 0;
  for (Eigen::Index i = 1; i < last; i += 2) odd += f(i);
  for (Eigen::Index i = 2; i < last; i += 2) even += f(i);
  return h / Scalar(3) * (f(0) + f(last) + Scalar(4) * odd + Scalar(2) * even) + tail;
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int order) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  Eigen::VectorXd weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return {solver.eigenvalues(), weights};
}

/// Cubic (4-point Lagrange) interpolation of uniformly sampled data at
/// fractional index `s` in [0, n-1]. Stencils are shifted inward at the ends.
template <typename Derived>
typename Derived::Scalar cubic_at(const Eigen::MatrixBase<Derived>& f,
                                  typename Derived::Scalar s) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = f.size();
  Eigen::Index i = static_cast<Eigen::Index>(std::floor(s));
  if (i < 0) i = 0;
  if (i > n - 2) i = n - 2;
  const Scalar x = s - Scalar(i);
  if (x == Scalar(0)) return f(i);
  Eigen::Index base = i - 1;
  if (base < 0) base = 0;
  if (base > n - 4) base = n - 4;
  const Scalar u = s - Scalar(base);  // in [0, 3]
  const Scalar l0 = -(u - 1) * (u - 2) * (u - 3) / Scalar(6);
  const Scalar l1 = u * (u - 2) * (u - 3) / Scalar(2);
  const Scalar l2 = -u * (u - 1) * (u - 3) / Scalar(2);
  const Scalar l3 = u * (u - 1) * (u - 2) / Scalar(6);
  return l0 * f(base) + l1 * f(base + 1) + l2 * f(base + 2) + l3 * f(base + 3);
}

}  // namespace ckn::numerics
