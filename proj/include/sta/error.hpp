#pragma once

#include <stdexcept>
#include <string>

namespace sta {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported matrix dimension, stage index, or mismatched operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// gamma0 = 0 makes cot(gamma) diverge.
class SingularScheduleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A value that should satisfy a structural invariant (unitarity, trace, ...) does not.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The fixed-step integrator drifted beyond tolerance; raise the step count.
class IntegrationError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

/// Malformed configuration text or an out-of-range configured value.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace sta
