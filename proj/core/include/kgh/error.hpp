#pragma once

#include <stdexcept>
#include <string>

namespace kgh {

enum class ErrorKind {
  contract_violation,
  invalid_parameter,
  singular_symbol,
  grid_mismatch,
  precondition_violation,
  resolution_exhausted,
  no_admissible_q,
  exponent_incompatible,
  invalid_kernel,
  no_valid_choice,
  no_contraction,
  non_convergence,
  instability,
  config_error,
  io_error,
};

const char* to_string(ErrorKind kind) noexcept;

// Base of every error thrown by the library. The kind is what callers (and the
// CLI exit-code mapping) branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ResolutionExhausted : public Error {
 public:
  ResolutionExhausted(const std::string& what, double best_bound)
      : Error(ErrorKind::resolution_exhausted, what), best_bound_(best_bound) {}
  double best_bound() const noexcept { return best_bound_; }

 private:
  double best_bound_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double last_residual)
      : Error(ErrorKind::non_convergence, what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class Instability : public Error {
 public:
  Instability(const std::string& what, double last_stable_time)
      : Error(ErrorKind::instability, what), last_stable_time_(last_stable_time) {}
  double last_stable_time() const noexcept { return last_stable_time_; }

 private:
  double last_stable_time_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(ErrorKind::config_error, what), line_(line) {}
  // 0 when the error is not tied to a line.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace kgh
