#pragma once

#include <stdexcept>
#include <string>

namespace p1split {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct FieldMismatch : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Raised when a basis turns out to be rank deficient (det = 0).
struct SingularMatrix : Error {
  using Error::Error;
};

struct UnsupportedField : Error {
  using Error::Error;
};

struct EnumerationCapExceeded : Error {
  using Error::Error;
};

// A produced certificate failed its own re-verification. Always a bug.
struct VerificationFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace p1split
