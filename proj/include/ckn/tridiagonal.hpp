#pragma once

// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection and
// eigenvectors by inverse iteration.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ckn/error.hpp"

namespace ckn {

template <typename Scalar>
class SymTridiagonal {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// `diag` has n entries, `off` has n-1 (off(i) couples i and i+1).
  SymTridiagonal(Vector diag, Vector off) : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.size() < 1 || off_.size() != diag_.size() - 1) {
      throw Error(ErrorCode::InvalidArgument, "tridiagonal: size mismatch");
    }
    off_sq_ = off_.array().square();
  }

  Eigen::Index size() const { return diag_.size(); }
  const Vector& diag() const { return diag_; }
  const Vector& off() const { return off_; }

  /// Number of eigenvalues strictly below x (inertia of T - xI via LDL^T).
  Eigen::Index count_below(Scalar x) const {
    const Scalar tiny = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
    Eigen::Index count = 0;
    Scalar q = diag_(0) - x;
    if (q < 0) ++count;
    for (Eigen::Index i = 1; i < size(); ++i) {
      if (q == Scalar(0)) q = tiny;
      q = diag_(i) - x - off_sq_(i - 1) / q;
      if (q < 0) ++count;
    }
    return count;
  }

  /// Gershgorin interval containing the whole spectrum.
  std::pair<Scalar, Scalar> gershgorin() const {
    Scalar lo = std::numeric_limits<Scalar>::max();
    Scalar hi = std::numeric_limits<Scalar>::lowest();
    for (Eigen::Index i = 0; i < size(); ++i) {
      Scalar r = 0;
      if (i > 0) r += std::abs(off_(i - 1));
      if (i + 1 < size()) r += std::abs(off_(i));
      lo = std::min(lo, diag_(i) - r);
      hi = std::max(hi, diag_(i) + r);
    }
    return {lo, hi};
  }

  /// The j-th smallest eigenvalue (j = 0 is the lowest).
  Scalar eigenvalue(Eigen::Index j) const {
    if (j < 0 || j >= size()) {
      throw Error(ErrorCode::InvalidArgument, "tridiagonal: eigenvalue index out of range");
    }
    auto [lo, hi] = gershgorin();
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar scale = std::max(std::abs(lo), std::abs(hi));
    for (int it = 0; it < 400; ++it) {
      const Scalar mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      if (count_below(mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (hi - lo <= Scalar(2) * eps * std::max(std::abs(lo), std::abs(hi)) + eps * eps * scale) {
        break;
      }
    }
    return lo + (hi - lo) / 2;
  }

  /// Eigenvector for a converged eigenvalue, normalized to unit Euclidean
  /// norm with a positive component sum (or positive first significant entry).
  Vector eigenvector(Scalar mu) const {
    const Eigen::Index n = size();
    auto [lo, hi] = gershgorin();
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar shift = mu + Scalar(64) * eps * std::max(std::abs(lo), std::abs(hi));
    Vector x = Vector::Ones(n);
    for (int it = 0; it < 4; ++it) {
      x = solve_shifted(shift, x);
      const Scalar norm = x.norm();
      if (!(norm > 0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::NotConverged, "inverse iteration broke down");
      }
      x /= norm;
    }
    Scalar s = x.sum();
    if (std::abs(s) < Scalar(1e-8)) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(x(i)) > Scalar(1e-6)) {
          s = x(i);
          break;
        }
      }
    }
    if (s < 0) x = -x;
    return x;
  }

 private:
  // Solves (T - shift I) y = rhs with partial pivoting (tridiagonal Gaussian
  // elimination, LAPACK gttrf/gtts2 style).
  Vector solve_shifted(Scalar shift, const Vector& rhs) const {
    const Eigen::Index n = size();
    Vector d = diag_.array() - shift;
    Vector dl = off_;  // sub-diagonal
    Vector du = off_;  // super-diagonal
    Vector du2 = Vector::Zero(std::max<Eigen::Index>(n - 2, 0));
    Vector b = rhs;
    Eigen::Matrix<bool, Eigen::Dynamic, 1> swapped(std::max<Eigen::Index>(n - 1, 0));
    const Scalar tiny = std::numeric_limits<Scalar>::epsilon() *
                        std::max<Scalar>(Scalar(1), d.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (std::abs(d(i)) >= std::abs(dl(i))) {
        swapped(i) = false;
        if (d(i) == Scalar(0)) d(i) = tiny;
        const Scalar fact = dl(i) / d(i);
        dl(i) = fact;
        d(i + 1) -= fact * du(i);
        b(i + 1) -= fact * b(i);
      } else {
        swapped(i) = true;
        const Scalar fact = d(i) / dl(i);
        d(i) = dl(i);
        dl(i) = fact;
        const Scalar temp = du(i);
        du(i) = d(i + 1);
        d(i + 1) = temp - fact * d(i + 1);
        if (i + 2 < n) {
          du2(i) = du(i + 1);
          du(i + 1) = -fact * du(i + 1);
        }
        std::swap(b(i), b(i + 1));
        b(i + 1) -= fact * b(i);
      }
    }
    if (d(n - 1) == Scalar(0)) d(n - 1) = tiny;
    Vector y(n);
    y(n - 1) = b(n - 1) / d(n - 1);
    if (n >= 2) y(n - 2) = (b(n - 2) - du(n - 2) * y(n - 1)) / d(n - 2);
    for (Eigen::Index i = n - 3; i >= 0; --i) {
      y(i) = (b(i) - du(i) * y(i + 1) - du2(i) * y(i + 2)) / d(i);
    }
    return y;
  }

  Vector diag_;
  Vector off_;
  Vector off_sq_;
};

}  // namespace ckn
