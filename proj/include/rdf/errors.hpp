#pragma once
#include <stdexcept>
#include <string>

namespace rdf {

//! Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Parameters outside the mathematical domain of a formula (e.g. alpha >= |kappa|).
struct DomainError : Error {
  using Error::Error;
};

//! Iterative search exhausted its bracket or iteration budget.
struct ConvergenceError : Error {
  using Error::Error;
};

//! Radial grid does not cover the support of the solution.
struct GridTooSmallError : Error {
  using Error::Error;
};

//! Two fields that must share a grid do not.
struct ShapeMismatchError : Error {
  using Error::Error;
};

//! 1 - a^2 vanishes (or nearly so) somewhere in a nonlinear current evaluation.
struct SingularDenominatorError : Error {
  using Error::Error;
};

//! Time step violates the Courant bound dt <= dz.
struct CflError : Error {
  using Error::Error;
};

//! Input that fails a documented precondition (unnormalized orbital, bad config...).
struct InputError : Error {
  using Error::Error;
};

} // namespace rdf
