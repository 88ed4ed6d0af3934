#pragma once

#include <stdexcept>
#include <string>

namespace susypt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter set, grid, or configuration violates a stated invariant.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside a family's domain, or a request the physics cannot
/// satisfy (too many levels, grid too small for a bound state).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel could not produce a result (degenerate recurrence,
/// QR iteration that failed to converge).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace susypt
