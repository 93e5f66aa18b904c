#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvdt {

enum class ErrorCode {
  invalid_geometry,
  invalid_argument,
  singular_circuit,
  aliasing,
  insufficient_window,
  no_reference,
  shape_mismatch,
  uncalibrated,
  invalid_calibration,
  incompressible_limit,
  invalid_stiffness,
  degenerate_abscissa,
  calibration_failure,
  flat_response,
  underdetermined,
  malformed_trace,
  non_contact,
  saturated_measurement,
  parse,
  validation,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lvdt
