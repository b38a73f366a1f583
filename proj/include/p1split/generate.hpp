#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "p1split/eigen_support.hpp"

namespace p1split {

using Rng = std::mt19937_64;

template <class F>
Poly<F> random_poly(Rng& rng, const FieldSpec& field, int max_degree) {
  std::vector<F> c;
  for (int e = 0; e <= max_degree; ++e) c.push_back(random_scalar<F>(rng, field));
  return Poly<F>(std::move(c));
}

// sum_{t = min_order}^{max_order} c_t T^-t, an element of O_inf (of m_inf
// when min_order >= 1).
template <class F>
Laurent<F> random_power_series(Rng& rng, const FieldSpec& field, int min_order, int max_order) {
  std::vector<F> c;
  for (int t = max_order; t >= min_order; --t) c.push_back(random_scalar<F>(rng, field));
  return Laurent<F>(-max_order, std::move(c));
}

inline std::pair<Eigen::Index, Eigen::Index> random_pair(Rng& rng, Eigen::Index d) {
  std::uniform_int_distribution<Eigen::Index> pick(0, d - 1);
  const Eigen::Index i = pick(rng);
  Eigen::Index j = pick(rng);
  while (j == i) j = pick(rng);
  return {i, j};
}

/// Product of `steps` random elementary matrices (one off-diagonal polynomial
/// of degree <= max_degree) and a random constant invertible diagonal: an
/// element of GL_d(k[T]).
template <class F>
PolyMatrix<F> random_unimodular(Rng& rng, const FieldSpec& field, Eigen::Index d, int max_degree, int steps) {
  PolyMatrix<F> u = PolyMatrix<F>::Identity(d, d);
  for (int s = 0; s < steps && d > 1; ++s) {
    const auto [i, j] = random_pair(rng, d);
    const Poly<F> c = random_poly<F>(rng, field, max_degree);
    for (Eigen::Index r = 0; r < d; ++r) u(r, j) += c * u(r, i);
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const F c = random_scalar<F>(rng, field, true);
    for (Eigen::Index r = 0; r < d; ++r) u(r, j) *= c;
  }
  return u;
}

/// Product of elementary matrices with off-diagonal entries in m_inf
/// (valuation >= 1) and a constant invertible diagonal: an element of
/// GL_d(O_inf) with finite Laurent entries.
template <class F>
LaurentMatrix<F> random_power_series_unit(Rng& rng, const FieldSpec& field, Eigen::Index d, int depth, int steps) {
  LaurentMatrix<F> w = LaurentMatrix<F>::Identity(d, d);
  for (int s = 0; s < steps && d > 1; ++s) {
    const auto [i, j] = random_pair(rng, d);
    const Laurent<F> c = random_power_series<F>(rng, field, 1, std::max(depth, 1));
    for (Eigen::Index col = 0; col < d; ++col) w(i, col) += c * w(j, col);
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    const F c = random_scalar<F>(rng, field, true);
    for (Eigen::Index col = 0; col < d; ++col) w(i, col) *= c;
  }
  return w;
}

struct GenParams {
  std::uint64_t seed = 1;
  Eigen::Index dim = 2;
  int degree = 2;  // diagonal exponents in [-degree, degree]
  int mixes = 4;
};

template <class F>
struct GeneratedInstance {
  LaurentMatrix<F> matrix;
  std::vector<int> expected;  // known splitting type, non-increasing
};

/// Starts from diag(T^a_i) and applies `mixes` random elementary operations:
/// column operations with polynomial multipliers (right action of GL_d(A)),
/// row operations with multipliers in O_inf (left action of GL_d(O_inf)), and
/// constant rescalings. None of them changes the bundle, so the splitting
/// type stays sorted(-a_i).
template <class F>
GeneratedInstance<F> generate_instance(const GenParams& params, const FieldSpec& field) {
  Rng rng(params.seed);
  const Eigen::Index d = params.dim;
  const int reach = std::max(params.degree, 1);
  std::uniform_int_distribution<int> exponent(-params.degree, params.degree);

  std::vector<int> a(static_cast<std::size_t>(d));
  for (auto& x : a) x = exponent(rng);
  GeneratedInstance<F> out;
  out.matrix = monomial_diagonal<F>(a);
  for (Eigen::Index i = 0; i < d; ++i) out.matrix(i, i) *= make_scalar<F>(1, field);

  std::uniform_int_distribution<int> kind(0, 2);
  auto& m = out.matrix;
  for (int s = 0; s < params.mixes; ++s) {
    const int k = d > 1 ? kind(rng) : 2;
    if (k == 0) {
      const auto [i, j] = random_pair(rng, d);
      const Laurent<F> c(random_poly<F>(rng, field, reach));
      for (Eigen::Index r = 0; r < d; ++r) m(r, j) += c * m(r, i);
    } else if (k == 1) {
      const auto [i, j] = random_pair(rng, d);
      const Laurent<F> c = random_power_series<F>(rng, field, 0, reach);
      for (Eigen::Index col = 0; col < d; ++col) m(i, col) += c * m(j, col);
    } else {
      std::uniform_int_distribution<Eigen::Index> pick(0, d - 1);
      const Eigen::Index i = pick(rng);
      const F c = random_scalar<F>(rng, field, true);
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        for (Eigen::Index r = 0; r < d; ++r) m(r, i) *= c;
      } else {
        for (Eigen::Index col = 0; col < d; ++col) m(i, col) *= c;
      }
    }
  }

  for (const int x : a) out.expected.push_back(-x);
  std::sort(out.expected.begin(), out.expected.end(), std::greater<>());
  return out;
}

}  // namespace p1split
