#pragma once

#include <stdexcept>

namespace ictqkd {

// Base type for all library failures so callers can catch a single class.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside its mathematical domain (probabilities, intervals, ...).
struct DomainError : Error {
  using Error::Error;
};

// Requested enumeration or problem size beyond the supported limits.
struct CapacityError : Error {
  using Error::Error;
};

// Monitor click statistics outside the regime where the Taylor-expansion
// intensity bounds apply.
struct EstimationError : Error {
  using Error::Error;
};

// LP solve did not reach a usable optimum (nonconvergence, infeasible or
// unbounded where a finite optimum was required, numerical failure).
struct SolverError : Error {
  using Error::Error;
};

// Configuration parsing or validation failure.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ictqkd
