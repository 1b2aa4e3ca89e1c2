#pragma once

#include <stdexcept>
#include <string>

namespace powconc {

/// Argument outside the mathematical domain of an operation
/// (negative mean arguments, lambda outside [0,1], p + q < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inputs that collapse a construction, e.g. coincident space-time points.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Minkowski combination whose result has no closed representation.
class NotRepresentable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature or grid too coarse for the requested accuracy.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampling could not find usable points (empty region, zero field, ...).
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed descriptor or configuration.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace powconc
