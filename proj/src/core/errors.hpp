#pragma once

#include <stdexcept>
#include <string>

namespace pfmg {

// Error categories shared by the C++ core, the C API and the CLI exit codes.
// The numeric values are part of the external contract; do not renumber.
enum class ErrorCode : int {
  ok = 0,
  config = 2,            // bad config, grid/CFL violation, failed preconditions
  non_convergence = 3,   // iteration budget exhausted before tolerance
  infeasible = 4,        // constraint system has no admissible measure
  numerical = 5,         // NaN/overflow, bracket failure, singular solve
  invalid_argument = 6,  // misuse of the API surface
  io = 7,                // file read/write problems
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(ErrorCode::config, msg) {}
};

// Grid too coarse for the wave speeds the solver actually sees.
struct CflError : Error {
  CflError(double dt, double dx, double max_speed)
      : Error(ErrorCode::config,
              "CFL violation: dt=" + std::to_string(dt) + " dx=" + std::to_string(dx) +
                  " max|H_p|=" + std::to_string(max_speed)),
        dt(dt), dx(dx), max_speed(max_speed) {}
  double dt, dx, max_speed;
};

struct NonConvergence : Error {
  NonConvergence(const std::string& msg, int iterations, double residual)
      : Error(ErrorCode::non_convergence, msg), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

struct InfeasibleProblem : Error {
  explicit InfeasibleProblem(const std::string& msg, std::string witness = {})
      : Error(ErrorCode::infeasible, msg), witness(std::move(witness)) {}
  std::string witness;  // JSON fragment describing the certificate
};

struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& msg) : Error(ErrorCode::numerical, msg) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& msg) : Error(ErrorCode::invalid_argument, msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorCode::io, msg) {}
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::config: return "config_error";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::numerical: return "numerical_failure";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::io: return "io_error";
    case ErrorCode::internal: return "internal_error";
  }
  return "unknown";
}

}  // namespace pfmg
