#include "lvdt/error.hpp"

namespace lvdt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_geometry: return "invalid-geometry";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::singular_circuit: return "singular-circuit";
    case ErrorCode::aliasing: return "aliasing";
    case ErrorCode::insufficient_window: return "insufficient-window";
    case ErrorCode::no_reference: return "no-reference";
    case ErrorCode::shape_mismatch: return "shape-mismatch";
    case ErrorCode::uncalibrated: return "uncalibrated";
    case ErrorCode::invalid_calibration: return "invalid-calibration";
    case ErrorCode::incompressible_limit: return "incompressible-limit";
    case ErrorCode::invalid_stiffness: return "invalid-stiffness";
    case ErrorCode::degenerate_abscissa: return "degenerate-abscissa";
    case ErrorCode::calibration_failure: return "calibration-failure";
    case ErrorCode::flat_response: return "flat-response";
    case ErrorCode::underdetermined: return "underdetermined";
    case ErrorCode::malformed_trace: return "malformed-trace";
    case ErrorCode::non_contact: return "non-contact";
    case ErrorCode::saturated_measurement: return "saturated-measurement";
    case ErrorCode::parse: return "parse";
    case ErrorCode::validation: return "validation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace lvdt
