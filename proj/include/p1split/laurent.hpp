#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "p1split/poly.hpp"
#include "p1split/ratfun.hpp"

namespace p1split {

/// Finite k-linear combination of powers T^e, e in Z.
///
/// These are the elements of K_inf = k((1/T)) with finite support; the
/// uniformizer pi = T^-1 is the monomial of exponent -1. Canonical form keeps
/// the first and last stored coefficients nonzero; zero has no coefficients.
template <FieldElement F>
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(int literal) {
    if (literal != 0) coeffs_.push_back(F(literal));
  }
  explicit Laurent(F constant) {
    if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
  }
  Laurent(int low, std::vector<F> coeffs) : low_(low), coeffs_(std::move(coeffs)) { trim(); }
  explicit Laurent(const Poly<F>& p) : low_(0), coeffs_(p.coeffs()) { trim(); }

  static Laurent monomial(F c, int e) {
    if (c.is_zero()) return Laurent();
    return Laurent(e, std::vector<F>{std::move(c)});
  }

  bool is_zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  const std::vector<F>& coeffs() const { return coeffs_; }

  std::optional<int> max_exponent() const {
    if (coeffs_.empty()) return std::nullopt;
    return low_ + static_cast<int>(coeffs_.size()) - 1;
  }

  F coeff(int e) const {
    const int i = e - low_;
    if (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size()) return zero_like();
    return coeffs_[static_cast<std::size_t>(i)];
  }

  // Leading coefficient, at the largest exponent.
  const F& leading() const {
    if (coeffs_.empty()) throw DivisionByZero();
    return coeffs_.back();
  }

  /// Multiplication by T^e.
  Laurent shifted(int e) const {
    Laurent r = *this;
    if (!r.is_zero()) r.low_ += e;
    return r;
  }

  // Membership in A = k[T], O_inf (exponents <= 0) and m_inf (exponents <= -1).
  bool is_polynomial() const { return is_zero() || low_ >= 0; }
  bool in_power_series() const { return is_zero() || *max_exponent() <= 0; }
  bool in_maximal_ideal() const { return is_zero() || *max_exponent() <= -1; }

  Poly<F> to_poly() const {
    if (!is_polynomial()) throw DimensionMismatch("Laurent element has negative exponents");
    if (is_zero()) return Poly<F>();
    std::vector<F> v(static_cast<std::size_t>(low_), zero_like());
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly<F>(std::move(v));
  }

  // num/den in k(T) with den a power of T.
  RatFun<F> to_ratfun() const {
    if (is_zero()) return RatFun<F>();
    const Poly<F> body(coeffs_);
    if (low_ >= 0) return RatFun<F>(body.shifted(low_));
    return RatFun<F>(body, Poly<F>::monomial(F(0) * coeffs_.front() + F(1), -low_));
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Laurent& operator+=(const Laurent& o) { return *this = combine(*this, o, false); }
  Laurent& operator-=(const Laurent& o) { return *this = combine(*this, o, true); }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  Laurent& operator*=(const F& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }
  friend Laurent operator*(Laurent a, const F& c) { return a *= c; }
  friend Laurent operator*(const F& c, Laurent a) { return a *= c; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return Laurent();
    std::vector<F> v(a.coeffs_.size() + b.coeffs_.size() - 1, a.zero_like());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Laurent(a.low_ + b.low_, std::move(v));
  }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Laurent& x) {
    if (x.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = x.coeffs_.size(); i-- > 0;) {
      if (x.coeffs_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      const int e = x.low_ + static_cast<int>(i);
      os << "(" << x.coeffs_[i] << ")";
      if (e != 0) os << "*T^" << e;
    }
    return os;
  }

 private:
  F zero_like() const { return coeffs_.empty() ? F(0) : F(0) * coeffs_.front(); }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      low_ += static_cast<int>(lead);
    }
    if (coeffs_.empty()) low_ = 0;
  }

  static Laurent combine(const Laurent& a, const Laurent& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    const int low = std::min(a.low_, b.low_);
    const int high = std::max(*a.max_exponent(), *b.max_exponent());
    std::vector<F> v(static_cast<std::size_t>(high - low + 1), a.zero_like());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[static_cast<std::size_t>(a.low_ - low) + i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
      auto& slot = v[static_cast<std::size_t>(b.low_ - low) + i];
      if (subtract) slot -= b.coeffs_[i];
      else slot += b.coeffs_[i];
    }
    return Laurent(low, std::move(v));
  }

  int low_ = 0;
  std::vector<F> coeffs_;
};

/// -(largest exponent); +infinity for zero.
template <FieldElement F>
Valuation val_inf(const Laurent<F>& x) {
  const auto e = x.max_exponent();
  return e ? Valuation(-*e) : Valuation::infinity();
}

/// Splitting lambda = lambda^A + lambda^m into its polynomial part and the part
/// vanishing at infinity.
template <class Vanishing, FieldElement F>
struct Decomposition {
  Poly<F> poly_part;
  Vanishing vanishing_part;
};

template <FieldElement F>
Decomposition<Laurent<F>, F> decompose(const Laurent<F>& x) {
  if (x.is_zero()) return {Poly<F>(), Laurent<F>()};
  std::vector<F> poly, tail;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const int e = x.low() + static_cast<int>(i);
    if (e >= 0) poly.push_back(x.coeffs()[i]);
    else tail.push_back(x.coeffs()[i]);
  }
  Laurent<F> vanishing(x.low(), std::move(tail));
  Poly<F> poly_part;
  if (!poly.empty()) poly_part = Laurent<F>(std::max(x.low(), 0), std::move(poly)).to_poly();
  return {std::move(poly_part), std::move(vanishing)};
}

template <FieldElement F>
Decomposition<RatFun<F>, F> decompose(const RatFun<F>& x) {
  auto [q, r] = divmod(x.num(), x.den());
  return {std::move(q), RatFun<F>(std::move(r), x.den())};
}

/// Exact quotient a/b in k[T, T^-1]; nullopt when b does not divide a.
template <FieldElement F>
std::optional<Laurent<F>> exact_quotient(const Laurent<F>& a, const Laurent<F>& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Laurent<F>();
  // Both bodies have a nonzero constant term, so divisibility is polynomial.
  const Poly<F> num(a.coeffs()), den(b.coeffs());
  auto q = exact_quotient(num, den);
  if (!q) return std::nullopt;
  return Laurent<F>(*q).shifted(a.low() - b.low());
}

}  // namespace p1split
