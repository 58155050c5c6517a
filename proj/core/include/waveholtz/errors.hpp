#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace waveholtz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grids, fields or operators that do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Frequency sits on (or numerically on) an eigenvalue.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// A combination of scheme, boundary conditions or geometry that is not implemented.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared while time stepping.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// CG met a direction with non-positive curvature.
class IndefiniteOperatorError : public Error {
 public:
  using Error::Error;
};

/// Multi-frequency extraction could not find well-conditioned sample times.
class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace waveholtz
