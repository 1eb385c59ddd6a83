#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace crossres {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (E <= 0, h <= 0, x past a turning point, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A potential or coupling returned NaN/inf.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve did not converge; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> last_iterate)
      : Error(what), last_iterate_(last_iterate) {}
  std::complex<double> last_iterate() const noexcept { return last_iterate_; }

 private:
  std::complex<double> last_iterate_;
};

/// Two turning points collided.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// One of the structural assumptions on the model is violated.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

/// The square-root integrand touched its branch cut away from an endpoint.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Quadrature refinement did not reach the tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// The distorted contour does not damp outgoing waves.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// Two algebraically equal routes disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace crossres
