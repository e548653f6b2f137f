#pragma once

#include <stdexcept>
#include <string>

namespace phimod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("operation undefined on the zero polynomial") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class BadParameters : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Hensel lifting or certification of a p-adic factor did not succeed at
/// the working precision.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, long precision)
      : Error(what), precision_(precision) {}
  long precision() const noexcept { return precision_; }

 private:
  long precision_;
};

class PreconditionBreach : public Error {
 public:
  using Error::Error;
};

/// A computation contradicted a proven statement. Either the input breaks a
/// precondition that was not caught, or the library has a bug.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class NotTriangular : public Error {
 public:
  using Error::Error;
};

}  // namespace phimod
