#pragma once

#include <stdexcept>
#include <string>

namespace wormkit {

// Base for every numerical failure the library reports. The CLI maps these
// to exit status 2; ValidationError maps to exit status 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Raised when a monomial exponent has Re <= -1, so the Bergman norm diverges.
class DivergentIntegralError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Invalid user-facing parameters. `field()` names the offending field, e.g.
// "WormParams.mu".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace wormkit
