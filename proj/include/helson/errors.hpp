#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace helson {

/// Argument outside the mathematical domain of a function (t <= 1 for zeta, x <= 0 for K, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or out-of-range configuration (grid bounds, missing kernel parameter, size caps).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite value produced or consumed during a numerical computation.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method gave up; carries the best estimates reached so far.
class IterationError : public std::runtime_error {
 public:
  IterationError(const std::string& what, std::vector<double> best_estimates)
      : std::runtime_error(what), best_(std::move(best_estimates)) {}

  const std::vector<double>& best_estimates() const noexcept { return best_; }

 private:
  std::vector<double> best_;
};

}  // namespace helson
