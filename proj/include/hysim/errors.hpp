#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hysim {

/// Integration produced a non-finite value or left the divergence guard.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// An iterative search ran out of iterations; carries the last residual.
class NotConvergedError : public std::runtime_error {
 public:
  NotConvergedError(double residual, const std::string& what)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A trace was asked for a steady-state quantity before settling.
class NotSteadyError : public std::runtime_error {
 public:
  NotSteadyError(double residual, const std::string& what)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A regression/estimation step had no usable samples.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hysim
