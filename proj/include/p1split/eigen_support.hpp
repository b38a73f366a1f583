#pragma once

#include <Eigen/Core>

#include "p1split/laurent.hpp"
#include "p1split/poly.hpp"
#include "p1split/ratfun.hpp"
#include "p1split/scalar.hpp"

namespace p1split::detail {

template <class T>
struct ExactNumTraits {
  using Real = T;
  using NonInteger = T;
  using Literal = T;
  using Nested = T;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 16
  };
  // Only consulted by Eigen's stream output.
  static constexpr int digits10() { return 0; }
};

}  // namespace p1split::detail

namespace Eigen {

template <>
struct NumTraits<p1split::Fp> : p1split::detail::ExactNumTraits<p1split::Fp> {};
template <>
struct NumTraits<p1split::Rational> : p1split::detail::ExactNumTraits<p1split::Rational> {};
template <class F>
struct NumTraits<p1split::Poly<F>> : p1split::detail::ExactNumTraits<p1split::Poly<F>> {};
template <class F>
struct NumTraits<p1split::Laurent<F>> : p1split::detail::ExactNumTraits<p1split::Laurent<F>> {};
template <class F>
struct NumTraits<p1split::RatFun<F>> : p1split::detail::ExactNumTraits<p1split::RatFun<F>> {};

}  // namespace Eigen

namespace p1split {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class F>
using ScalarMatrix = Matrix<F>;
template <class F>
using PolyMatrix = Matrix<Poly<F>>;
template <class F>
using LaurentMatrix = Matrix<Laurent<F>>;
template <class F>
using RatFunMatrix = Matrix<RatFun<F>>;
template <class F>
using LaurentVector = Vector<Laurent<F>>;

/// Integer valuations ||v_i|| of an orthogonal reference basis; all zero is
/// the orthonormal standard basis.
using GaugeWeights = Eigen::VectorXi;

template <class F>
LaurentMatrix<F> to_laurent(const PolyMatrix<F>& m) {
  return m.unaryExpr([](const Poly<F>& p) { return Laurent<F>(p); });
}

template <class F>
PolyMatrix<F> to_poly(const LaurentMatrix<F>& m) {
  return m.unaryExpr([](const Laurent<F>& x) { return x.to_poly(); });
}

template <class F>
RatFunMatrix<F> to_ratfun(const LaurentMatrix<F>& m) {
  return m.unaryExpr([](const Laurent<F>& x) { return x.to_ratfun(); });
}

// diag(T^e_0, ..., T^e_{d-1})
template <class F>
LaurentMatrix<F> monomial_diagonal(const std::vector<int>& exponents) {
  const auto d = static_cast<Eigen::Index>(exponents.size());
  LaurentMatrix<F> m = LaurentMatrix<F>::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = Laurent<F>(1).shifted(exponents[static_cast<std::size_t>(i)]);
  return m;
}

}  // namespace p1split
