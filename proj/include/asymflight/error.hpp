#pragma once

#include <stdexcept>
#include <string>

namespace asymflight {

enum class ErrorCode {
  invalid_argument = 1,
  parse_error,
  io_error,
  validation,
  altitude_out_of_range,
  hover_singularity,
  sideslip_singularity,
  gimbal_singularity,
  pure_sideslip,
  undefined_flank,
  singular_elevator,
  singular_control_effectiveness,
  singular_inertia,
  not_symmetric,
  unattainable_trim,
  non_uniform_sampling,
  too_few_samples,
  no_convergence,
  singular_jacobian,
};

const char* to_string(ErrorCode code);

class FlightError : public std::runtime_error {
 public:
  FlightError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Rethrows with a context prefix, keeping the error code.
[[noreturn]] void rethrow_with_context(const FlightError& e, const std::string& context);

}  // namespace asymflight
