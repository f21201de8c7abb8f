#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

//! Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

//! Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

//! A quadrature did not reach its tolerance within the evaluation budget.
class QuadratureError : public Error {
public:
  QuadratureError(const std::string &what, double partial, double estimate)
      : Error(what + " (partial value " + std::to_string(partial) +
              ", error estimate " + std::to_string(estimate) + ")"),
        partial_value(partial), error_estimate(estimate) {}
  double partial_value;
  double error_estimate;
};

//! A standing assumption (integrability, boundedness) failed a numerical probe.
class AssumptionViolation : public Error {
public:
  using Error::Error;
};

//! Operation precondition not met (e.g. unbounded input, no minimiser).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

//! Geometry does not fit inside the periodic box.
class BoxTooSmall : public Error {
public:
  using Error::Error;
};

//! Refusal of a direct (double-quadrature) computation on too large a grid.
class CostGuard : public Error {
public:
  using Error::Error;
};

//! Numerical blow-up (NaN or overflow) detected.
class NumericalError : public Error {
public:
  using Error::Error;
};

//! Configuration parse or validation failure.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace nonlocal
