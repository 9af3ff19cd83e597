#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

/// Base of every error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition did not hold (non-Hermitian input, non-uniform grid, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A function evaluated to NaN or infinity during a scan.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Raised when a spectrum cannot be interpreted, typically because the truncation is too small.
class DiagnosticsError : public Error {
 public:
  using Error::Error;
};

/// Inputs for which a method is trivially degenerate (e.g. CHRW at zero drive).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// The CHRW self-consistency condition has no root in [0, 1].
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// The CHRW self-consistency condition has several roots in [0, 1].
class AmbiguousSolutionError : public Error {
 public:
  AmbiguousSolutionError(const std::string& what, std::vector<double> roots)
      : Error(what), roots_(std::move(roots)) {}
  const std::vector<double>& roots() const { return roots_; }

 private:
  std::vector<double> roots_;
};

/// A perturbative denominator vanishes: the drive sits on a multiphoton resonance.
class MultiphotonResonanceError : public Error {
 public:
  MultiphotonResonanceError(const std::string& what, int k) : Error(what), k_(k) {}
  int resonant_index() const { return k_; }

 private:
  int k_;
};

/// Two routes that must agree algebraically did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace rabi
