#include "kgh/error.hpp"

namespace kgh {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::contract_violation: return "contract violation";
    case ErrorKind::invalid_parameter: return "invalid parameter";
    case ErrorKind::singular_symbol: return "singular symbol";
    case ErrorKind::grid_mismatch: return "grid mismatch";
    case ErrorKind::precondition_violation: return "precondition violation";
    case ErrorKind::resolution_exhausted: return "resolution exhausted";
    case ErrorKind::no_admissible_q: return "no admissible q";
    case ErrorKind::exponent_incompatible: return "exponent incompatible";
    case ErrorKind::invalid_kernel: return "invalid kernel";
    case ErrorKind::no_valid_choice: return "no valid choice";
    case ErrorKind::no_contraction: return "no contraction";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::instability: return "instability";
    case ErrorKind::config_error: return "config error";
    case ErrorKind::io_error: return "i/o error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace kgh
