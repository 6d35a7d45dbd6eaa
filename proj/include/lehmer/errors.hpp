#pragma once

#include <stdexcept>
#include <string>

namespace lehmer {

/// Malformed wire-format polynomial text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (non-monic input, odd degree
/// for the trace transform, volume below the validity threshold, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The root finder ran out of iterations or could not certify the requested
/// radius even after raising the working precision.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checkpoint file could not be loaded (version, checksum, spec mismatch).
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lehmer
