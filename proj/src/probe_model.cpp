#include "lvdt/probe_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lvdt/error.hpp"

namespace lvdt {
namespace {

[[noreturn]] void geometry_error(const std::string& what) {
  throw Error(ErrorCode::invalid_geometry, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void SensorGeometry::validate() const {
  if (!finite_positive(core_length_mm)) geometry_error("core_length_mm must be > 0");
  if (!(coil_a.end_mm > coil_a.start_mm)) geometry_error("coil A interval is degenerate");
  if (!(coil_b.end_mm > coil_b.start_mm)) geometry_error("coil B interval is degenerate");
  if (coil_a.end_mm > coil_b.start_mm && coil_b.end_mm > coil_a.start_mm) {
    geometry_error("coil A and coil B overlap");
  }
  if (turns_primary <= 0) geometry_error("turns_primary must be > 0");
  if (turns_secondary <= 0) geometry_error("turns_secondary must be > 0");
  if (!(coupling_gain >= 0.0) || !std::isfinite(coupling_gain)) {
    geometry_error("coupling_gain must be >= 0");
  }
  if (!finite_positive(spring_constant_n_per_mm)) {
    geometry_error("spring_constant_n_per_mm must be > 0");
  }
}

void ExcitationConfig::validate() const {
  if (!finite_positive(amplitude_v)) {
    throw Error(ErrorCode::invalid_argument, "excitation amplitude must be > 0");
  }
  if (!finite_positive(frequency_hz)) {
    throw Error(ErrorCode::invalid_argument, "excitation frequency must be > 0");
  }
  if (!(series_resistance_ohm >= 0.0) || !std::isfinite(series_resistance_ohm)) {
    throw Error(ErrorCode::invalid_argument, "series resistance must be >= 0");
  }
}

double ExcitationConfig::angular_frequency() const noexcept {
  return 2.0 * std::numbers::pi * frequency_hz;
}

void CircuitParams::validate() const {
  auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!non_negative(primary_resistance_ohm)) {
    throw Error(ErrorCode::invalid_argument, "primary resistance must be >= 0");
  }
  if (!non_negative(primary_reactance_ohm)) {
    throw Error(ErrorCode::invalid_argument, "primary reactance must be >= 0");
  }
  if (!finite_positive(reference_frequency_hz)) {
    throw Error(ErrorCode::invalid_argument, "reactance reference frequency must be > 0");
  }
  if (!non_negative(gain)) throw Error(ErrorCode::invalid_argument, "gain must be >= 0");
}

double overlap_length(double core_start, double core_end, double coil_start, double coil_end) {
  if (!(core_end > core_start)) geometry_error("core interval is degenerate");
  if (!(coil_end > coil_start)) geometry_error("coil interval is degenerate");
  return std::max(0.0, std::min(core_end, coil_end) - std::max(core_start, coil_start));
}

double coupling_fraction(const SensorGeometry& geometry, Coil coil, double core_position_mm) {
  geometry.validate();
  const Interval& span = geometry.coil(coil);
  const Interval core = geometry.core_span(core_position_mm);
  const double covered = overlap_length(core.start_mm, core.end_mm, span.start_mm, span.end_mm);
  return std::clamp(covered / span.length(), 0.0, 1.0);
}

double coupling_oracle(const SensorGeometry& geometry, Coil coil, double core_position_mm,
                       std::size_t n_slices) {
  if (n_slices == 0) throw Error(ErrorCode::invalid_argument, "n_slices must be >= 1");
  geometry.validate();
  const Interval& span = geometry.coil(coil);
  const Interval core = geometry.core_span(core_position_mm);
  const double width = span.length() / static_cast<double>(n_slices);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < n_slices; ++i) {
    const double mid = span.start_mm + (static_cast<double>(i) + 0.5) * width;
    if (mid >= core.start_mm && mid <= core.end_mm) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(n_slices);
}

double primary_current_amplitude(const ExcitationConfig& excitation,
                                 const CircuitParams& circuit) {
  excitation.validate();
  circuit.validate();
  const double resistance = excitation.series_resistance_ohm + circuit.primary_resistance_ohm;
  const double reactance = circuit.reactance_at(excitation.frequency_hz);
  const double impedance = std::hypot(resistance, reactance);
  if (impedance == 0.0) {
    throw Error(ErrorCode::singular_circuit, "primary circuit has zero impedance");
  }
  return excitation.amplitude_v / impedance;
}

VoltagePair secondary_amplitudes(const SensorGeometry& geometry,
                                 const ExcitationConfig& excitation,
                                 const CircuitParams& circuit, double core_position_mm) {
  const double current = primary_current_amplitude(excitation, circuit);
  const double scale = excitation.angular_frequency() * geometry.coupling_gain * current;
  return {scale * coupling_fraction(geometry, Coil::a, core_position_mm),
          scale * coupling_fraction(geometry, Coil::b, core_position_mm)};
}

double differential_at(const SensorGeometry& geometry, const ExcitationConfig& excitation,
                       const CircuitParams& circuit, double core_position_mm) {
  return differential_output(secondary_amplitudes(geometry, excitation, circuit,
                                                  core_position_mm));
}

double linear_half_range(const SensorGeometry& geometry) {
  geometry.validate();
  const double half = 0.5 * geometry.core_length_mm;
  const double center = geometry.center_mm();
  const std::array<double, 4> ends{geometry.coil_a.start_mm, geometry.coil_a.end_mm,
                                   geometry.coil_b.start_mm, geometry.coil_b.end_mm};
  double nearest = std::numeric_limits<double>::infinity();
  for (double end : ends) {
    // Core positions at which either core edge crosses this coil end.
    nearest = std::min(nearest, std::abs(end - half - center));
    nearest = std::min(nearest, std::abs(end + half - center));
  }
  return nearest;
}

double differential_sensitivity(const SensorGeometry& geometry,
                                const ExcitationConfig& excitation,
                                const CircuitParams& circuit) {
  const double center = geometry.center_mm();
  double step = 0.5 * linear_half_range(geometry);
  if (step == 0.0) step = 1e-6 * geometry.core_length_mm;
  const double hi = differential_at(geometry, excitation, circuit, center + step);
  const double lo = differential_at(geometry, excitation, circuit, center - step);
  return (hi - lo) / (2.0 * step);
}

}  // namespace lvdt
