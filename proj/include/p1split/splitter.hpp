#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "p1split/smb.hpp"

namespace p1split {

/// Splitting type and certificate of the bundle glued from the A-lattice
/// spanned by the columns of M and the unit ball of the weighted norm.
///
/// Convention: n_i = gauge(omega_i), so E = O(n_1) + ... + O(n_d) with
/// n_1 >= ... >= n_d and sum n_i = val_inf(det M) + sum w_i. The columns of W
/// are v_i = T^{n_i} omega_i, an O_inf-basis of the unit ball, and
///
///     scale * M = W * diag(T^-(n_i - shift)) * U,     U in GL_d(k[T]).
///
/// For Laurent input scale = 1 and shift = 0. For rational input, scale is
/// the common denominator f and shift = deg f.
template <class F>
struct Splitting {
  std::vector<int> n;
  LaurentMatrix<F> W;
  PolyMatrix<F> U;
  int shift = 0;
  Poly<F> scale = Poly<F>(1);
  GaugeWeights weights;
  std::size_t iterations = 0;
  std::size_t iteration_bound = 0;

  // diag(pi^(n_i - shift)) with pi = T^-1.
  LaurentMatrix<F> D() const {
    std::vector<int> e(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) e[i] = shift - n[i];
    return monomial_diagonal<F>(e);
  }
};

struct VerifyReport {
  bool factorization = false;    // (a) M = W D U exactly
  bool unimodular = false;       // (b) det U in k^*
  bool w_integral = false;       // (c) entries of W in O_inf (weighted)
  bool w_unit_det = false;       // (d) val_inf(det W) = 0 (weighted)
  bool degree_identity = false;  // (e) sum n_i = val_inf(det M) (weighted)
  bool sorted = false;           // (f) n non-increasing

  bool all() const { return factorization && unimodular && w_integral && w_unit_det && degree_identity && sorted; }
};

/// Re-checks every clause of a splitting against the (cleared) Laurent
/// matrix it factors.
template <class F>
VerifyReport verify_splitting(const LaurentMatrix<F>& m, const Splitting<F>& s) {
  const Eigen::Index d = m.rows();
  if (m.cols() != d || s.W.rows() != d || s.W.cols() != d || s.U.rows() != d || s.U.cols() != d ||
      static_cast<Eigen::Index>(s.n.size()) != d || s.weights.size() != d)
    throw DimensionMismatch("verify_splitting: dimensions disagree");

  VerifyReport r;
  r.factorization = (s.W * s.D() * to_laurent(s.U)) == m;

  const Poly<F> det_u = determinant(s.U);
  r.unimodular = !det_u.is_zero() && det_u.is_constant();

  r.w_integral = true;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (val_inf(s.W(i, j)) + Valuation(s.weights(i)) < Valuation(0)) r.w_integral = false;

  const int weight_sum = s.weights.sum();
  r.w_unit_det = val_inf(determinant(s.W)) + Valuation(weight_sum) == Valuation(0);

  const int n_sum = std::accumulate(s.n.begin(), s.n.end(), 0) - static_cast<int>(d) * s.shift;
  r.degree_identity = val_inf(determinant(m)) + Valuation(weight_sum) == Valuation(n_sum);

  r.sorted = std::is_sorted(s.n.rbegin(), s.n.rend());
  return r;
}

// scale * M, provided every entry becomes a polynomial.
template <class F>
std::optional<LaurentMatrix<F>> clear_denominators(const RatFunMatrix<F>& m, const Poly<F>& scale) {
  LaurentMatrix<F> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      auto q = exact_quotient(scale * m(i, j).num(), m(i, j).den());
      if (!q) return std::nullopt;
      out(i, j) = Laurent<F>(*q);
    }
  }
  return out;
}

template <class F>
VerifyReport verify_splitting(const RatFunMatrix<F>& m, const Splitting<F>& s) {
  const auto cleared = clear_denominators(m, s.scale);
  if (!cleared) return VerifyReport{};
  VerifyReport r = verify_splitting(*cleared, s);
  if (*s.scale.degree() != s.shift) r.degree_identity = false;
  return r;
}

template <class F>
Splitting<F> split(const LaurentMatrix<F>& m, const FieldSpec& field, const GaugeWeights& weights,
                   const ReduceOptions& options = {}) {
  const Lattice<F> lattice(field, m, weights);
  SMBResult<F> s = smb(lattice, options);

  Splitting<F> out;
  out.n = s.gauges;
  out.W.resize(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.W(i, j) = s.omegas(i, j).shifted(out.n[static_cast<std::size_t>(j)]);
  out.U = std::move(s.U_inverse);
  out.weights = weights;
  out.iterations = s.iterations;
  out.iteration_bound = s.iteration_bound;

  if (!verify_splitting(m, out).all()) throw VerificationFailure("split: certificate failed verification");
  return out;
}

template <class F>
Splitting<F> split(const LaurentMatrix<F>& m, const FieldSpec& field) {
  return split(m, field, zero_weights(m.rows()));
}

/// Monic least common multiple of all entry denominators.
template <class F>
Poly<F> common_denominator(const RatFunMatrix<F>& m) {
  Poly<F> f(1);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) f = lcm(f, m(i, j).den());
  return f;
}

/// Rational front end: split f*M for the common denominator f and undo the
/// shift. Scaling the lattice by f lowers every gauge by deg f exactly.
template <class F>
Splitting<F> split_rational(const RatFunMatrix<F>& m, const FieldSpec& field, const GaugeWeights& weights,
                            const ReduceOptions& options = {}) {
  if (m.rows() != m.cols()) throw DimensionMismatch("split_rational: matrix is not square");
  const Poly<F> f = common_denominator(m);
  const auto cleared = clear_denominators(m, f);
  if (!cleared) throw std::logic_error("common denominator does not clear the matrix");

  Splitting<F> out = split(*cleared, field, weights, options);
  out.shift = *f.degree();
  out.scale = f;
  for (int& ni : out.n) ni += out.shift;

  if (!verify_splitting(m, out).all()) throw VerificationFailure("split_rational: certificate failed verification");
  return out;
}

template <class F>
Splitting<F> split_rational(const RatFunMatrix<F>& m, const FieldSpec& field) {
  return split_rational(m, field, zero_weights(m.rows()));
}

}  // namespace p1split
