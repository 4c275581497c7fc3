#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace korteweg {

/// Argument outside the domain of a constitutive function (e.g. rho <= 0).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A constitutive law could not be evaluated (quadrature failure, bad parameters).
class LawError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Misuse of an API: mismatched grids, wrong field location, bad sizes.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid simulation state. Carries the first offending cell when known.
class StateError : public std::runtime_error {
public:
  StateError(const std::string& what, std::ptrdiff_t i = -1, std::ptrdiff_t j = -1)
      : std::runtime_error(what), i_(i), j_(j) {}

  std::ptrdiff_t cell_i() const noexcept { return i_; }
  std::ptrdiff_t cell_j() const noexcept { return j_; }

private:
  std::ptrdiff_t i_;
  std::ptrdiff_t j_;
};

/// Linear solver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// Configuration file / override problems. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace korteweg
