#pragma once

#include <stdexcept>
#include <string>

namespace ncortho {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold (mismatched alphabets,
/// degree bounds exceeded, unknown letters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data does not have the required shape or content.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A numerical certificate failed: a factorization pivot fell below the
/// tolerance or a recurrence residual exceeded it.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncortho
