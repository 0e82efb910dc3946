#pragma once

#include <stdexcept>
#include <string>

namespace sweep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, bad step sizes, unordered grids.
class InputError : public Error {
 public:
  using Error::Error;
};

/// S(t) is empty (or no feasible point could be found).
class EmptySetError : public Error {
 public:
  using Error::Error;
};

/// The sampled slice S(t) ∩ U contained no points.
class EmptySliceError : public Error {
 public:
  using Error::Error;
};

/// The defining gradient vanishes at a boundary point.
class SingularNormalError : public Error {
 public:
  using Error::Error;
};

/// The talweg is numerically infinite inside the requested window.
class UnremovableSingularityError : public Error {
 public:
  using Error::Error;
};

/// Function values along a gradient flow failed to decrease.
class NonMonotoneFlowError : public Error {
 public:
  using Error::Error;
};

/// Requested operation is outside the implemented class of inputs.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A time was requested outside the domain of a reparametrized family.
class DomainError : public Error {
 public:
  using Error::Error;
};

void require(bool condition, const std::string& message);
void require_dimension(std::ptrdiff_t expected, std::ptrdiff_t actual,
                       const char* what);

}  // namespace sweep
