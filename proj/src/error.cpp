#include "asymflight/error.hpp"

namespace asymflight {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::io_error: return "i/o error";
    case ErrorCode::validation: return "validation error";
    case ErrorCode::altitude_out_of_range: return "altitude out of range";
    case ErrorCode::hover_singularity: return "hover singularity";
    case ErrorCode::sideslip_singularity: return "sideslip singularity";
    case ErrorCode::gimbal_singularity: return "gimbal singularity";
    case ErrorCode::pure_sideslip: return "pure sideslip";
    case ErrorCode::undefined_flank: return "undefined flank angle";
    case ErrorCode::singular_elevator: return "singular elevator";
    case ErrorCode::singular_control_effectiveness: return "singular control effectiveness";
    case ErrorCode::singular_inertia: return "singular inertia";
    case ErrorCode::not_symmetric: return "airframe not symmetric";
    case ErrorCode::unattainable_trim: return "unattainable trim";
    case ErrorCode::non_uniform_sampling: return "non-uniform sampling";
    case ErrorCode::too_few_samples: return "too few samples";
    case ErrorCode::no_convergence: return "no convergence";
    case ErrorCode::singular_jacobian: return "singular jacobian";
  }
  return "unknown error";
}

void rethrow_with_context(const FlightError& e, const std::string& context) {
  throw FlightError(e.code(), context + ": " + e.what());
}

}  // namespace asymflight
