#pragma once

#include <stdexcept>
#include <string>

namespace bgkmix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: parameters, grid extents, config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The velocity/internal-energy box cuts off too much Maxwellian mass.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Failures that arise while integrating: the state left the admissible region.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Density below the vacuum floor at some spatial node.
class VacuumError : public NumericalError {
 public:
  VacuumError(const std::string& what, std::size_t node, double density)
      : NumericalError(what), node_(node), density_(density) {}
  std::size_t node() const noexcept { return node_; }
  double density() const noexcept { return density_; }

 private:
  std::size_t node_;
  double density_;
};

/// A temperature-like quantity came out non-positive.
class NegativeTemperatureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Arguments outside the mathematical domain of a construction (e.g. Lambda <= 0).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Time step rejected by the relaxation-exponent guard.
class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A decay-rate fit was requested on a signal that never rises above the noise floor.
class InsufficientDecayError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bgkmix
