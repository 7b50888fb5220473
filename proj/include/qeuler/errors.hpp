#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qeuler {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition was violated (zero denominator, composite
/// prime, even conductor, singular q, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument lies outside the convergence disc of a p-adic series
/// (exp, log, or a q-power built from them).
class ConvergenceDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Division by a value that is zero at its stated precision; the quotient
/// is indeterminate, not merely imprecise.
class IndeterminateDivisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A requested value cannot be realized in the active scalar backend
/// (e.g. a root of unity whose order does not divide p-1).
class UnsupportedValueError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An operation ran out of certified p-adic digits.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A supplied table or structure failed an internal consistency check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Text input did not match the expected grammar. Carries the offset of
/// the first offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qeuler
