#pragma once

#include <stdexcept>
#include <string>

namespace mbt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the interval where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid arguments (N = 0, L < a, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Singular linear systems and amplitudes outside the double range.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The opaque factorization diverges at a resonance and refuses to evaluate.
class NearResonanceError : public NumericError {
 public:
  NearResonanceError(const std::string& what, double denominator)
      : NumericError(what), denominator_(denominator) {}

  double denominator() const noexcept { return denominator_; }

 private:
  double denominator_;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbt
