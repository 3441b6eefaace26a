#pragma once

#include <stdexcept>
#include <string>

namespace dgla {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A pair of differentials does not compose to zero.
class ComplexError : public Error {
 public:
  using Error::Error;
};

/// A structure fails one of its defining identities (Jacobi, associativity,
/// Leibniz, closure of a subalgebra, morphism identity, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A degree-one element is not a Maurer-Cartan element.
class NotMaurerCartan : public Error {
 public:
  using Error::Error;
};

/// A construction needs a unit the algebra does not declare.
class MissingUnit : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (rational strings, algebra files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A floating point computation produced NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgla
