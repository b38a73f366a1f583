#pragma once

#include "p1split/eigen_support.hpp"

namespace p1split {

inline GaugeWeights zero_weights(Eigen::Index d) { return GaugeWeights::Zero(d); }

/// Integer form of the max-norm attached to an orthogonal basis with
/// ||v_i|| = sigma^{w_i}: gauge(v) = min_i (val(v_i) + w_i).
///
/// The norm is sigma^gauge, so larger norm means smaller gauge. +infinity
/// exactly for the zero vector.
template <class Derived>
Valuation vector_gauge(const Eigen::MatrixBase<Derived>& v, const GaugeWeights& w) {
  if (v.size() != w.size()) throw DimensionMismatch("gauge: vector and weights differ in length");
  Valuation g = Valuation::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) g = min(g, val_inf(v(i)) + Valuation(w(i)));
  return g;
}

/// Unit ball of the weighted norm, ||v|| <= 1.
template <class Derived>
bool is_in_unit_ball(const Eigen::MatrixBase<Derived>& v, const GaugeWeights& w) {
  return vector_gauge(v, w) >= Valuation(0);
}

template <class F>
std::vector<Valuation> column_gauges(const LaurentMatrix<F>& b, const GaugeWeights& w) {
  std::vector<Valuation> g;
  g.reserve(static_cast<std::size_t>(b.cols()));
  for (Eigen::Index j = 0; j < b.cols(); ++j) g.push_back(vector_gauge(b.col(j), w));
  return g;
}

/// Leading-coefficient matrix: entry (i, j) is the coefficient of b(i, j) at
/// the exponent w_i - gauge(column j), i.e. the terms realizing the column's
/// gauge. Zero columns give zero columns.
template <class F>
ScalarMatrix<F> leading_matrix(const LaurentMatrix<F>& b, const GaugeWeights& w) {
  const auto gauges = column_gauges(b, w);
  ScalarMatrix<F> lead = ScalarMatrix<F>::Zero(b.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const Valuation g = gauges[static_cast<std::size_t>(j)];
    if (g.is_infinite()) continue;
    for (Eigen::Index i = 0; i < b.rows(); ++i) lead(i, j) = b(i, j).coeff(w(i) - g.value());
  }
  return lead;
}

}  // namespace p1split
