#pragma once

#include <concepts>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>

#include <gmpxx.h>

#include "p1split/errors.hpp"

namespace p1split {

/// The base field k: a prime field F_p or the rationals.
class FieldSpec {
 public:
  enum class Kind { PrimeField, Rationals };

  static FieldSpec prime(std::int64_t p);
  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

  Kind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  std::int64_t characteristic() const { return p_; }

  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Element of F_p for a machine-word prime p.
///
/// Every element carries its modulus. A modulus of 0 marks an untyped
/// integer literal (what `Scalar(0)` and `Scalar(1)` produce inside generic
/// code); it adopts the modulus of the first typed operand it meets.
class Fp {
 public:
  Fp() = default;
  explicit Fp(std::int64_t literal) : value_(literal) {}
  Fp(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return modulus_; }
  bool is_typed() const { return modulus_ != 0; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  Fp inverse() const;

  Fp operator-() const;
  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

  friend bool operator==(const Fp& a, const Fp& b);

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value_; }

 private:
  // Brings both operands to a common modulus; throws FieldMismatch.
  static std::int64_t common_modulus(const Fp& a, const Fp& b);
  static std::int64_t reduce(std::int64_t v, std::int64_t m);

  std::int64_t value_ = 0;
  std::int64_t modulus_ = 0;
};

/// Exact rational number, always reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  explicit Rational(std::int64_t n) : q_(static_cast<long>(n)) {}
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "n" or "n/d".
  static Rational parse(const std::string& text);

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  std::string to_string() const { return q_.get_str(); }

  Rational inverse() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.q_.get_str(); }

 private:
  mpq_class q_;
};

template <class F>
concept FieldElement = requires(const F a, const F b) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::same_as<F>;
};

/// Per-field construction hooks used by generic code.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Fp> {
  static Fp make(std::int64_t v, const FieldSpec& spec) {
    if (!spec.is_prime_field()) throw FieldMismatch("F_p scalar requested for field " + spec.name());
    return Fp(v, spec.characteristic());
  }
  // Uniform over k^* (nonzero) or all of k.
  template <class Rng>
  static Fp random(Rng& rng, const FieldSpec& spec, bool nonzero) {
    const std::int64_t p = spec.characteristic();
    std::uniform_int_distribution<std::int64_t> dist(nonzero ? 1 : 0, p - 1);
    return Fp(dist(rng), p);
  }
};

template <>
struct FieldTraits<Rational> {
  static Rational make(std::int64_t v, const FieldSpec& spec) {
    if (spec.is_prime_field()) throw FieldMismatch("rational scalar requested for field " + spec.name());
    return Rational(v);
  }
  // Small integers in [-3, 3]; enough to exercise coefficient growth.
  template <class Rng>
  static Rational random(Rng& rng, const FieldSpec&, bool nonzero) {
    std::uniform_int_distribution<std::int64_t> dist(-3, 3);
    std::int64_t v = dist(rng);
    while (nonzero && v == 0) v = dist(rng);
    return Rational(v);
  }
};

template <class F>
F make_scalar(std::int64_t v, const FieldSpec& spec) {
  return FieldTraits<F>::make(v, spec);
}

template <class F, class Rng>
F random_scalar(Rng& rng, const FieldSpec& spec, bool nonzero = false) {
  return FieldTraits<F>::random(rng, spec, nonzero);
}

}  // namespace p1split
