#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace vnl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical result could not be certified to the requested accuracy.
/// When two competing estimates exist (e.g. order and doubled order) both are kept.
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(what) {}
  PrecisionError(const std::string& what, double first, double second)
      : Error(what), first_(first), second_(second) {}

  std::optional<double> first() const { return first_; }
  std::optional<double> second() const { return second_; }

 private:
  std::optional<double> first_;
  std::optional<double> second_;
};

/// Lattice window growth hit the configured maximum extent.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A numerical experiment's assumptions do not hold (e.g. non-unimodal bracket).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (state spec strings, flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vnl
