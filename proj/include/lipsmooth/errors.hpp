#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace lipsmooth {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A scalar parameter is out of its admissible range (lambda <= 0, epsilon
/// outside (0, 1/16), ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Input function values violate a domain precondition (negative where a
/// nonnegative function is required, outside [0, M], Lipschitz estimate
/// above the admitted constant, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Two grid functions that must share box and shape do not.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Oracle evaluation produced a non-finite value; message names the point.
class EvaluationError : public Error {
public:
  using Error::Error;
};

/// The grid is too coarse for the requested smoothing parameters. Carries
/// the minimal admissible shape so callers can act on it.
class ResolutionError : public Error {
public:
  ResolutionError(const std::string& what, std::vector<Eigen::Index> required)
      : Error(what), required_shape(std::move(required)) {}
  explicit ResolutionError(const std::string& what) : Error(what) {}

  std::vector<Eigen::Index> required_shape;
};

/// A mollifier failed to certify its required properties within the
/// doubling budget; message names the failed property.
class CertificationError : public Error {
public:
  using Error::Error;
};

/// Run configuration failed validation; message names the field.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// File read/write failure.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace lipsmooth
