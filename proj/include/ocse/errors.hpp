#pragma once

#include <stdexcept>
#include <string>

namespace ocse {

/// Raised when a covariance block is singular (or numerically indefinite)
/// beyond the jitter budget, or when a conditional variance collapses in a
/// place where no floored fallback exists.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative solver fails to reach its tolerance within the
/// allowed number of iterations.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ocse
