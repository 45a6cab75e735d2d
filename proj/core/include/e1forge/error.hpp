#pragma once

#include <stdexcept>
#include <string>

namespace e1forge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (polynomials, expressions, registry lines).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured element budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace e1forge
