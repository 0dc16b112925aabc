// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cvkit {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector lengths do not agree (prices vs goods, bundle vs spec, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value is outside the mathematical domain of the requested operation
/// (negative quantity, zero income, log of a non-positive number, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A utility spec is malformed: bad parameters, inconsistent declared
/// degrees, a transform that is not strictly increasing, or invalid JSON.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A cardinal check was requested for a spec whose transform destroys the
/// cardinal scale. Only identity-transform specs admit these checks.
class CardinalityError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped without meeting its tolerance. Carries the
/// best iterate found so the caller can inspect how far it got.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> best_point, double best_value)
      : Error(what), best_point_(std::move(best_point)), best_value_(best_value) {}
  const std::vector<double>& best_point() const noexcept { return best_point_; }
  double best_value() const noexcept { return best_value_; }

 private:
  std::vector<double> best_point_;
  double best_value_;
};

/// The expenditure bracketing phase hit its cap: the target utility is not
/// attainable below income 2^60 (or above income 2^-60 going down).
class BracketError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// File or stream level failure (unreadable CSV, unparsable row, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvkit
