#pragma once

#include <ostream>
#include <utility>

#include "p1split/poly.hpp"

namespace p1split {

/// Element of K = k(T) as num/den with den monic and gcd(num, den) = 1.
template <FieldElement F>
class RatFun {
 public:
  RatFun() : den_(1) {}
  explicit RatFun(int literal) : num_(literal), den_(1) {}
  explicit RatFun(Poly<F> num) : num_(std::move(num)), den_(1) {}
  RatFun(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFun inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFun(den_, num_);
  }

  RatFun operator-() const { return RatFun(-num_, den_, Canonical{}); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend std::ostream& operator<<(std::ostream& os, const RatFun& r) {
    os << "(" << r.num_ << ")";
    if (!r.den_.is_constant()) os << "/(" << r.den_ << ")";
    return os;
  }

 private:
  struct Canonical {};
  RatFun(Poly<F> num, Poly<F> den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = Poly<F>(1);
      return;
    }
    const Poly<F> g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    const F lead_inv = den_.leading().inverse();
    num_ *= lead_inv;
    den_ *= lead_inv;
  }

  Poly<F> num_;
  Poly<F> den_;
};

/// deg(den) - deg(num), +infinity for 0.
template <FieldElement F>
Valuation val_inf(const RatFun<F>& x) {
  if (x.is_zero()) return Valuation::infinity();
  return Valuation(*x.den().degree() - *x.num().degree());
}

}  // namespace p1split
