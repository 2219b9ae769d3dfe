#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tfode {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Gamma function evaluated at a pole (0, -1, -2, ...).
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Invalid problem, solver or sweep configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative construction failed to converge. Signals a bug, not bad input.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The time stepper produced a non-finite or runaway value.
class BlowUpError : public std::runtime_error {
public:
  BlowUpError(std::size_t step, double time, double value)
      : std::runtime_error(describe(step, time, value)),
        step_(step), time_(time), value_(value) {}

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }
  double value() const noexcept { return value_; }

private:
  static std::string describe(std::size_t step, double time, double value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "solution blew up at step %zu (t = %.6g, u = %.6g)", step, time, value);
    return buf;
  }

  std::size_t step_;
  double time_;
  double value_;
};

} // namespace tfode
