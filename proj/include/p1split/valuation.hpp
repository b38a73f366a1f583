#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace p1split {

/// Value of the valuation at infinity, an integer or +infinity (for zero).
///
/// Norms ||x|| = sigma^val(x) with 0 < sigma < 1 are never materialized; a
/// larger norm is a smaller valuation. The same type carries vector gauges.
class Valuation {
 public:
  constexpr Valuation() = default;  // +infinity
  constexpr Valuation(int v) : value_(v), finite_(true) {}

  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !finite_; }
  constexpr bool is_finite() const { return finite_; }

  int value() const {
    if (!finite_) throw std::logic_error("value() of infinite valuation");
    return value_;
  }

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.value_ <=> b.value_;
  }

  // +infinity absorbs.
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr Valuation operator-(const Valuation& a, int b) {
    if (!a.finite_) return infinity();
    return Valuation(a.value_ - b);
  }

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    if (v.is_infinite()) return os << "+inf";
    return os << v.value_;
  }

 private:
  int value_ = 0;
  bool finite_ = false;
};

inline constexpr Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

// Valuation at infinity of a polynomial-like quantity with the given degree.
inline constexpr Valuation from_degree(std::optional<int> degree) {
  return degree ? Valuation(-*degree) : Valuation::infinity();
}

}  // namespace p1split
