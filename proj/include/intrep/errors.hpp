#pragma once

#include <stdexcept>
#include <string>

namespace intrep {

// Argument outside the mathematical domain of an operation (x <= 0 for Gamma,
// r <= d/q for the Bessel family, unsorted grids, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A quadrature or root-finding budget was exhausted before the requested
// tolerance was reached. Carries the last estimate so callers can report it.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double value = 0.0, double error = 0.0)
      : std::runtime_error(what), value_(value), error_(error) {}
  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double value_;
  double error_;
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Linear program has no feasible point.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simplex iteration guard exceeded or a pivot became numerically unusable.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace intrep
