#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "p1split/errors.hpp"
#include "p1split/scalar.hpp"
#include "p1split/valuation.hpp"

namespace p1split {

/// Dense univariate polynomial over k, coefficients ascending by exponent.
///
/// Canonical form: the highest stored coefficient is nonzero, so the zero
/// polynomial is the empty coefficient list and structural equality is
/// mathematical equality.
template <FieldElement F>
class Poly {
 public:
  Poly() = default;
  explicit Poly(int literal) {
    if (literal != 0) coeffs_.push_back(F(literal));
  }
  explicit Poly(F constant) {
    if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
  }
  explicit Poly(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<F> coeffs) : coeffs_(coeffs) { trim(); }

  // c * T^e
  static Poly monomial(F c, int e) {
    if (c.is_zero()) return Poly();
    std::vector<F> v(static_cast<std::size_t>(e) + 1, F(0) * c);
    v.back() = std::move(c);
    return Poly(std::move(v));
  }

  const std::vector<F>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  // nullopt encodes deg 0 = -infinity.
  std::optional<int> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.size()) - 1;
  }

  // Coefficient of T^e; zero outside the stored range.
  F coeff(int e) const {
    if (e < 0 || static_cast<std::size_t>(e) >= coeffs_.size()) return zero_like();
    return coeffs_[static_cast<std::size_t>(e)];
  }

  const F& leading() const {
    if (coeffs_.empty()) throw DivisionByZero();
    return coeffs_.back();
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
  }

  Poly shifted(int e) const {
    if (is_zero() || e == 0) return *this;
    std::vector<F> v(static_cast<std::size_t>(e), zero_like());
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly(std::move(v));
  }

  F evaluate(const F& x) const {
    F acc = zero_like();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), o.zero_like());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), o.zero_like());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const F& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const F& c) { return a *= c; }
  friend Poly operator*(const F& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> v(a.coeffs_.size() + b.coeffs_.size() - 1, a.zero_like());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.coeffs_.size(); i-- > 0;) {
      if (p.coeffs_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << p.coeffs_[i] << ")";
      if (i > 0) os << "*T^" << i;
    }
    return os;
  }

 private:
  // A zero carrying the field type of the stored coefficients, if any.
  F zero_like() const { return coeffs_.empty() ? F(0) : F(0) * coeffs_.front(); }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<F> coeffs_;
};

template <FieldElement F>
Valuation val_inf(const Poly<F>& f) {
  return from_degree(f.degree());
}

/// Euclidean division: f = q*g + r with deg r < deg g.
template <FieldElement F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& f, const Poly<F>& g) {
  if (g.is_zero()) throw DivisionByZero();
  const int dg = *g.degree();
  const F lead_inv = g.leading().inverse();
  std::vector<F> rem = f.coeffs();
  if (static_cast<int>(rem.size()) <= dg) return {Poly<F>(), f};
  std::vector<F> quot(rem.size() - static_cast<std::size_t>(dg), F(0) * lead_inv);
  for (int i = static_cast<int>(rem.size()) - 1; i >= dg; --i) {
    const F c = rem[static_cast<std::size_t>(i)] * lead_inv;
    if (c.is_zero()) continue;
    const int shift = i - dg;
    quot[static_cast<std::size_t>(shift)] = c;
    for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(shift + j)] -= c * g.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dg));
  return {Poly<F>(std::move(quot)), Poly<F>(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
template <FieldElement F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <FieldElement F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>();
  return divmod(a * b, gcd(a, b)).first.monic();
}

/// Quotient when g divides f exactly, nullopt otherwise.
template <FieldElement F>
std::optional<Poly<F>> exact_quotient(const Poly<F>& f, const Poly<F>& g) {
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

}  // namespace p1split
