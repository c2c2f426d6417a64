#pragma once

#include <stdexcept>
#include <string>

namespace ncpgd {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two points (or a point and a set) with different ambient shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf where a finite value is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// A cone query or solver start at a point that is not in the feasible set.
class InfeasiblePointError : public Error {
 public:
  using Error::Error;
};

// SVD / eigensolver did not converge.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

// The set does not implement the requested query.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// The backtracking loop hit its cap without satisfying the Armijo condition.
class BacktrackFailure : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (set spec, objective spec, config file, CSV).
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ncpgd
