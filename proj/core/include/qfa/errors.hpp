#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfa {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document syntax. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A well-formed document carrying an illegal value (negative or non-integer entry).
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Array dimensions disagree with the declared rank.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Caller broke an operation's precondition (side mismatch, ring mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain (p < 1, zero element, bad exponent triple).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A spectral computation failed. `index()` names the offending basis element or sample.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::ptrdiff_t index = -1);
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

class UnsupportedStructure : public Error {
 public:
  using Error::Error;
};

/// Negative fractional power of a singular density.
class SingularPowerError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested dimension exceeds the configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfa
