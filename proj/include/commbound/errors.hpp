#pragma once

#include <stdexcept>
#include <string>

namespace commbound {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the documented domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Fourier quadrature could not reach its error target.
class QuadratureError : public Error {
  public:
    using Error::Error;
};

/// A coefficient tail could not be summed to the requested accuracy.
class TailError : public Error {
  public:
    using Error::Error;
};

/// Eigendecomposition residual too large, or input not normal.
class DecompositionError : public Error {
  public:
    using Error::Error;
};

}  // namespace commbound
