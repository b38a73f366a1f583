#include "p1split/scalar.hpp"

#include <numeric>
#include <tuple>
#include <utility>

namespace p1split {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  // Products of two residues must fit in 64 bits.
  if (p >= (std::int64_t{1} << 31) || !is_prime(p))
    throw FieldMismatch("not a supported prime: " + std::to_string(p));
  return FieldSpec(Kind::PrimeField, p);
}

std::string FieldSpec::name() const {
  return is_prime_field() ? "F_" + std::to_string(p_) : "Q";
}

std::int64_t Fp::reduce(std::int64_t v, std::int64_t m) {
  if (m == 0) return v;
  v %= m;
  return v < 0 ? v + m : v;
}

Fp::Fp(std::int64_t value, std::int64_t modulus) : value_(reduce(value, modulus)), modulus_(modulus) {}

std::int64_t Fp::common_modulus(const Fp& a, const Fp& b) {
  if (a.modulus_ == b.modulus_ || b.modulus_ == 0) return a.modulus_;
  if (a.modulus_ == 0) return b.modulus_;
  throw FieldMismatch("F_" + std::to_string(a.modulus_) + " vs F_" + std::to_string(b.modulus_));
}

Fp Fp::inverse() const {
  if (modulus_ == 0) {
    if (value_ == 1 || value_ == -1) return *this;
    throw FieldMismatch("inverse of untyped literal " + std::to_string(value_));
  }
  if (value_ == 0) throw DivisionByZero();
  // Extended Euclid on (value, p).
  std::int64_t r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return Fp(s0, modulus_);
}

Fp Fp::operator-() const { return Fp(-value_, modulus_); }

Fp& Fp::operator+=(const Fp& o) {
  modulus_ = common_modulus(*this, o);
  value_ = reduce(value_ + o.value_, modulus_);
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  modulus_ = common_modulus(*this, o);
  value_ = reduce(value_ - o.value_, modulus_);
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  modulus_ = common_modulus(*this, o);
  value_ = reduce(reduce(value_, modulus_) * reduce(o.value_, modulus_), modulus_);
  return *this;
}

bool operator==(const Fp& a, const Fp& b) {
  const std::int64_t m = Fp::common_modulus(a, b);
  return Fp::reduce(a.value_, m) == Fp::reduce(b.value_, m);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      q = mpq_class(mpz_class(text, 10));
    } else {
      mpz_class den(text.substr(slash + 1), 10);
      if (den == 0) throw DivisionByZero();
      q = mpq_class(mpz_class(text.substr(0, slash), 10), den);
    }
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational number: \"" + text + "\"");
  }
  return Rational(std::move(q));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

}  // namespace p1split
