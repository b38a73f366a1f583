#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "p1split/gauge.hpp"
#include "p1split/linalg.hpp"

namespace p1split {

// ---------------------------------------------------------------------------
// Weak Popov column reduction of square polynomial matrices.
//
// The column degree of a nonzero column is the largest entry degree, and its
// pivot is the largest row index attaining it. A matrix is in weak Popov form
// when the pivots of its columns are pairwise distinct; its leading
// coefficient matrix is then a permuted triangular matrix, hence nonsingular,
// and the columns form an orthogonal basis for the max-norm.
// ---------------------------------------------------------------------------

struct ReduceOptions {
  // 0 selects the documented deterministic rule. Any other value randomizes
  // the order in which collisions are found and how equal-degree collisions
  // are resolved; used to check that outputs do not depend on those choices.
  std::uint64_t tie_break_seed = 0;
};

template <class F>
struct ReduceResult {
  PolyMatrix<F> reduced;            // input * transform
  PolyMatrix<F> transform;          // unimodular
  PolyMatrix<F> inverse_transform;  // transform^-1, so input = reduced * inverse_transform
  std::vector<int> pivot_rows;
  std::vector<int> column_degrees;
  std::size_t iterations = 0;
  std::size_t iteration_bound = 0;  // d * (sum of input column degrees + d)
};

template <class F>
std::optional<int> column_degree(const PolyMatrix<F>& m, Eigen::Index j) {
  std::optional<int> deg;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto e = m(i, j).degree();
    if (e && (!deg || *e > *deg)) deg = e;
  }
  return deg;
}

// Largest row index attaining the column degree, -1 for a zero column.
template <class F>
int pivot_row(const PolyMatrix<F>& m, Eigen::Index j) {
  const auto deg = column_degree(m, j);
  if (!deg) return -1;
  for (Eigen::Index i = m.rows(); i-- > 0;)
    if (m(i, j).degree() == deg) return static_cast<int>(i);
  return -1;
}

template <class F>
bool is_weak_popov(const PolyMatrix<F>& m) {
  std::vector<bool> seen(static_cast<std::size_t>(m.rows()), false);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const int p = pivot_row(m, j);
    if (p < 0 || seen[static_cast<std::size_t>(p)]) return false;
    seen[static_cast<std::size_t>(p)] = true;
  }
  return true;
}

template <class F>
ReduceResult<F> weak_popov_reduce(const PolyMatrix<F>& m, const ReduceOptions& options = {}) {
  if (m.rows() != m.cols()) throw DimensionMismatch("weak_popov_reduce: matrix is not square");
  const Eigen::Index d = m.cols();

  ReduceResult<F> r;
  r.reduced = m;
  r.transform = PolyMatrix<F>::Identity(d, d);
  r.inverse_transform = PolyMatrix<F>::Identity(d, d);
  r.column_degrees.assign(static_cast<std::size_t>(d), 0);
  r.pivot_rows.assign(static_cast<std::size_t>(d), -1);

  auto refresh = [&](Eigen::Index j) {
    const auto deg = column_degree(r.reduced, j);
    if (!deg) throw SingularMatrix("basis is rank deficient (a column reduced to zero)");
    r.column_degrees[static_cast<std::size_t>(j)] = *deg;
    r.pivot_rows[static_cast<std::size_t>(j)] = pivot_row(r.reduced, j);
  };
  for (Eigen::Index j = 0; j < d; ++j) refresh(j);

  const long degree_sum = std::accumulate(r.column_degrees.begin(), r.column_degrees.end(), 0L);
  r.iteration_bound = static_cast<std::size_t>(d * (degree_sum + d));

  std::optional<std::mt19937_64> rng;
  if (options.tie_break_seed != 0) rng.emplace(options.tie_break_seed);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::vector<Eigen::Index> owner(static_cast<std::size_t>(d));

  for (;;) {
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    std::fill(owner.begin(), owner.end(), Eigen::Index{-1});
    std::optional<std::pair<Eigen::Index, Eigen::Index>> collision;
    for (const Eigen::Index j : order) {
      auto& slot = owner[static_cast<std::size_t>(r.pivot_rows[static_cast<std::size_t>(j)])];
      if (slot < 0) {
        slot = j;
      } else {
        collision.emplace(slot, j);
        break;
      }
    }
    if (!collision) break;

    auto [x, y] = *collision;
    const int dx = r.column_degrees[static_cast<std::size_t>(x)];
    const int dy = r.column_degrees[static_cast<std::size_t>(y)];
    // Reduce the column of larger degree; on equal degrees the larger index.
    bool reduce_x = dx > dy || (dx == dy && x > y);
    if (dx == dy && rng) reduce_x = std::uniform_int_distribution<int>(0, 1)(*rng) == 1;
    const Eigen::Index a = reduce_x ? x : y;
    const Eigen::Index b = reduce_x ? y : x;

    const Eigen::Index row = r.pivot_rows[static_cast<std::size_t>(a)];
    const int shift = r.column_degrees[static_cast<std::size_t>(a)] - r.column_degrees[static_cast<std::size_t>(b)];
    const F c = r.reduced(row, a).leading() / r.reduced(row, b).leading();
    const Poly<F> term = Poly<F>::monomial(c, shift);

    for (Eigen::Index i = 0; i < d; ++i) {
      r.reduced(i, a) -= term * r.reduced(i, b);
      r.transform(i, a) -= term * r.transform(i, b);
      r.inverse_transform(b, i) += term * r.inverse_transform(a, i);
    }
    ++r.iterations;
    refresh(a);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lattices and successive minimum bases.
// ---------------------------------------------------------------------------

/// A k[T]-lattice: the A-span of the columns of a nonsingular Laurent matrix,
/// inside K_inf^d normed by diagonal weights.
template <class F>
class Lattice {
 public:
  Lattice(FieldSpec field, LaurentMatrix<F> basis, GaugeWeights weights)
      : field_(field), basis_(std::move(basis)), weights_(std::move(weights)) {
    if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
      throw DimensionMismatch("lattice basis must be a nonempty square matrix");
    if (weights_.size() != basis_.rows()) throw DimensionMismatch("weights length differs from lattice dimension");
    if (determinant(basis_).is_zero()) throw SingularMatrix("lattice basis has zero determinant");
  }
  Lattice(FieldSpec field, LaurentMatrix<F> basis)
      : Lattice(field, basis, zero_weights(basis.rows())) {}

  const FieldSpec& field() const { return field_; }
  Eigen::Index dim() const { return basis_.rows(); }
  const LaurentMatrix<F>& basis() const { return basis_; }
  const GaugeWeights& weights() const { return weights_; }

 private:
  FieldSpec field_;
  LaurentMatrix<F> basis_;
  GaugeWeights weights_;
};

/// Orthogonal successive minimum basis omega_1..omega_d of a lattice, sorted
/// by norm ascending (gauge descending), with the unimodular change of basis.
template <class F>
struct SMBResult {
  LaurentMatrix<F> omegas;
  PolyMatrix<F> U;          // basis * U = omegas
  PolyMatrix<F> U_inverse;  // basis = omegas * U_inverse
  std::vector<int> gauges;
  std::vector<int> pivot_rows;
  GaugeWeights weights;
  std::size_t iterations = 0;
  std::size_t iteration_bound = 0;
};

// Exponent shift s folding the weights into a polynomial matrix
// T^(s - w_i) * basis(i, j).
template <class F>
int polynomial_shift(const LaurentMatrix<F>& basis, const GaugeWeights& w) {
  int s = 0;
  for (Eigen::Index i = 0; i < basis.rows(); ++i)
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      if (!basis(i, j).is_zero()) s = std::max(s, w(i) - basis(i, j).low());
  return s;
}

template <class F>
SMBResult<F> smb(const Lattice<F>& lattice, const ReduceOptions& options = {}) {
  const Eigen::Index d = lattice.dim();
  const auto& basis = lattice.basis();
  const auto& w = lattice.weights();

  const int s = polynomial_shift(basis, w);
  PolyMatrix<F> folded(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) folded(i, j) = basis(i, j).shifted(s - w(i)).to_poly();

  ReduceResult<F> red = weak_popov_reduce(folded, options);
  const LaurentMatrix<F> omegas = basis * to_laurent(red.transform);

  std::vector<int> gauges(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) gauges[static_cast<std::size_t>(j)] = s - red.column_degrees[static_cast<std::size_t>(j)];

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return gauges[static_cast<std::size_t>(a)] > gauges[static_cast<std::size_t>(b)];
  });

  SMBResult<F> out;
  out.omegas.resize(d, d);
  out.U.resize(d, d);
  out.U_inverse.resize(d, d);
  out.weights = w;
  out.iterations = red.iterations;
  out.iteration_bound = red.iteration_bound;
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    out.omegas.col(k) = omegas.col(j);
    out.U.col(k) = red.transform.col(j);
    out.U_inverse.row(k) = red.inverse_transform.row(j);
    out.gauges.push_back(gauges[static_cast<std::size_t>(j)]);
    out.pivot_rows.push_back(red.pivot_rows[static_cast<std::size_t>(j)]);
  }

  for (Eigen::Index k = 0; k < d; ++k)
    if (vector_gauge(out.omegas.col(k), w) != Valuation(out.gauges[static_cast<std::size_t>(k)]))
      throw VerificationFailure("smb: gauge bookkeeping disagrees with the computed basis");
  return out;
}

/// A shortest nonzero lattice vector and its gauge (omega_1).
template <class F>
std::pair<LaurentVector<F>, int> shortest_vector(const Lattice<F>& lattice) {
  SMBResult<F> s = smb(lattice);
  return {s.omegas.col(0), s.gauges.front()};
}

/// The successive minima as gauges; independent of the reduction choices.
template <class F>
const std::vector<int>& successive_minima(const SMBResult<F>& s) {
  return s.gauges;
}

/// Coefficients lambda with v = sum_j lambda_j omega_j, exact over k(T).
template <class F>
Vector<RatFun<F>> smb_coordinates(const LaurentVector<F>& v, const SMBResult<F>& s) {
  if (v.size() != s.omegas.rows()) throw DimensionMismatch("vector length differs from lattice dimension");
  return solve(s.omegas, v);
}

/// Gauge of the distance from v to U_i = <omega_1..omega_i> over K_inf.
///
/// By orthogonality this is min_{j > i} (val(lambda_j) + gauge(omega_j)); the
/// infimum is attained at sum_{j <= i} lambda_j omega_j.
template <class F>
Valuation distance_to_span(const LaurentVector<F>& v, const SMBResult<F>& s, Eigen::Index i) {
  const Eigen::Index d = s.omegas.cols();
  if (i < 0 || i > d) throw DimensionMismatch("subspace index out of range");
  const auto lambda = smb_coordinates(v, s);
  Valuation g = Valuation::infinity();
  for (Eigen::Index j = i; j < d; ++j) g = min(g, val_inf(lambda(j)) + Valuation(s.gauges[static_cast<std::size_t>(j)]));
  return g;
}

/// Def. of orthogonality certified by a nonsingular leading-coefficient matrix.
template <class F>
bool is_orthogonal_basis(const LaurentMatrix<F>& b, const GaugeWeights& w) {
  if (b.rows() != b.cols() || w.size() != b.rows()) return false;
  for (const Valuation& g : column_gauges(b, w))
    if (g.is_infinite()) return false;
  return rank(leading_matrix(b, w)) == b.cols();
}

struct SMBChecks {
  bool generation = false;   // basis * U = omegas
  bool unimodular = false;   // det U in k^*
  bool inverse = false;      // U * U_inverse = 1
  bool sorted = false;       // gauges non-increasing
  bool orthogonal = false;   // leading matrix nonsingular
  bool pivots_distinct = false;

  bool all() const { return generation && unimodular && inverse && sorted && orthogonal && pivots_distinct; }
};

template <class F>
SMBChecks check_smb(const Lattice<F>& lattice, const SMBResult<F>& s) {
  const Eigen::Index d = lattice.dim();
  SMBChecks c;
  c.generation = (lattice.basis() * to_laurent(s.U)) == s.omegas;
  const Poly<F> det = determinant(s.U);
  c.unimodular = !det.is_zero() && det.is_constant();
  c.inverse = (s.U * s.U_inverse) == PolyMatrix<F>::Identity(d, d);
  c.sorted = std::is_sorted(s.gauges.rbegin(), s.gauges.rend());
  c.orthogonal = is_orthogonal_basis(s.omegas, lattice.weights());
  std::vector<int> p = s.pivot_rows;
  std::sort(p.begin(), p.end());
  c.pivots_distinct = std::adjacent_find(p.begin(), p.end()) == p.end();
  return c;
}

}  // namespace p1split
