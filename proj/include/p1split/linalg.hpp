#pragma once

#include <utility>

#include "p1split/eigen_support.hpp"

namespace p1split {

/// Rank over k by Gaussian elimination.
template <FieldElement F>
Eigen::Index rank(ScalarMatrix<F> m) {
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Eigen::Index p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(r));
    const F inv = m(r, c).inverse();
    for (Eigen::Index i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const F f = m(i, c) * inv;
      for (Eigen::Index j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Fraction-free (Bareiss) determinant over an integral domain with exact
/// division, here k[T] or k[T, T^-1].
template <class R>
R bareiss_determinant(Matrix<R> m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return R(1);
  bool negate = false;
  R prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Eigen::Index p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return R();
    if (p != k) {
      m.row(p).swap(m.row(k));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        auto q = exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
        if (!q) throw std::logic_error("Bareiss step was not exact");
        m(i, j) = std::move(*q);
      }
      m(i, k) = R();
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

template <FieldElement F>
Poly<F> determinant(const PolyMatrix<F>& m) {
  return bareiss_determinant(m);
}

template <FieldElement F>
Laurent<F> determinant(const LaurentMatrix<F>& m) {
  return bareiss_determinant(m);
}

/// Determinant over the field k(T) by Gaussian elimination.
template <FieldElement F>
RatFun<F> determinant(RatFunMatrix<F> m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatFun<F> det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return RatFun<F>();
    if (p != k) {
      m.row(p).swap(m.row(k));
      det = -det;
    }
    det = det * m(k, k);
    const RatFun<F> inv = m(k, k).inverse();
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      const RatFun<F> f = m(i, k) * inv;
      for (Eigen::Index j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
    }
  }
  return det;
}

/// Solves A x = b over K = k(T) by Cramer's rule with Laurent determinants.
template <FieldElement F>
Vector<RatFun<F>> solve(const LaurentMatrix<F>& a, const LaurentVector<F>& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw DimensionMismatch("solve: shape mismatch");
  const Laurent<F> det = determinant(a);
  if (det.is_zero()) throw SingularMatrix("solve: singular system");
  const RatFun<F> det_inv = det.to_ratfun().inverse();
  Vector<RatFun<F>> x(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    LaurentMatrix<F> aj = a;
    aj.col(j) = b;
    x(j) = determinant(aj).to_ratfun() * det_inv;
  }
  return x;
}

/// Inverse of a unimodular polynomial matrix via its adjugate.
template <FieldElement F>
PolyMatrix<F> unimodular_inverse(const PolyMatrix<F>& u) {
  const Eigen::Index n = u.rows();
  const Poly<F> det = determinant(u);
  if (det.is_zero() || !det.is_constant()) throw SingularMatrix("matrix is not unimodular");
  const F det_inv = det.leading().inverse();
  PolyMatrix<F> inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Cofactor C_ji, minor without row j and column i.
      PolyMatrix<F> minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = u(r, c);
        }
        ++rr;
      }
      Poly<F> cof = determinant(minor) * det_inv;
      inv(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return inv;
}

}  // namespace p1split
