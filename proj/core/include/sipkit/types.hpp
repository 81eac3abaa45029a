#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace sipkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base of every error raised by sipkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: parse errors, dimension mismatches,
/// violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to produce a trustworthy answer.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace sipkit
