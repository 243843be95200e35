#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kerrqnd {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (out-of-range efficiency, non-finite entry, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numeric failures; the CLI maps all of these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The homodyne angle is blind to the cross-phase signal: H^T S(R,phi) (0,1)^T vanishes.
class ZeroGain : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The error decreases monotonically in the probe photon number (gamma_s = 0 or eta = 1).
class NoFiniteOptimum : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

/// optimal_theta called with A = B = 0.
class DegenerateDirection : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Configuration file or flag failed validation. Carries the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error("field '" + field + "': " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kerrqnd
