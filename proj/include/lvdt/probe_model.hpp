#pragma once

// Coil coupling and excitation model of the differential-transformer probe.
//
// Axial coordinates are in millimetres with the origin at the geometric centre
// of the two secondary coils. A core position is the axial coordinate of the
// core's centre. Coil A sits on the negative side, coil B on the positive side.

#include <cstddef>

namespace lvdt {

struct Interval {
  double start_mm = 0.0;
  double end_mm = 0.0;

  double length() const noexcept { return end_mm - start_mm; }
};

enum class Coil { a, b };

struct SensorGeometry {
  double core_length_mm = 20.0;
  Interval coil_a{-12.0, -2.0};
  Interval coil_b{2.0, 12.0};
  int turns_primary = 400;
  // Shared by both secondaries.
  int turns_secondary = 200;
  // V*s per (A*rad) at full overlap. Lumps turns, permeability and leakage.
  double coupling_gain = 1.0e-3;
  double spring_constant_n_per_mm = 1.3;

  /// Throws Error{invalid_geometry} on degenerate or overlapping coils,
  /// non-positive core length, turns or spring constant.
  void validate() const;

  const Interval& coil(Coil which) const noexcept { return which == Coil::a ? coil_a : coil_b; }

  /// Midpoint between the outer ends of the two secondaries.
  double center_mm() const noexcept { return 0.5 * (coil_a.start_mm + coil_b.end_mm); }

  Interval core_span(double core_position_mm) const noexcept {
    return {core_position_mm - 0.5 * core_length_mm, core_position_mm + 0.5 * core_length_mm};
  }
};

struct ExcitationConfig {
  double amplitude_v = 10.0;  // peak
  double frequency_hz = 1000.0;
  double series_resistance_ohm = 6.2;

  void validate() const;
  double angular_frequency() const noexcept;
};

/// Series RL model of the primary winding. The reactance is quoted at
/// reference_frequency_hz and scales linearly with frequency. `gain` is the
/// lumped transfer constant of the terminal output model
/// V_out = gain * V_exc / |Z| used for bench-table fits; the time-domain
/// secondary amplitudes are built from coupling_gain instead.
struct CircuitParams {
  double primary_resistance_ohm = 0.0;
  double primary_reactance_ohm = 2.05;
  double reference_frequency_hz = 1000.0;
  double gain = 1.0;

  void validate() const;
  double reactance_at(double frequency_hz) const noexcept {
    return primary_reactance_ohm * frequency_hz / reference_frequency_hz;
  }
};

struct VoltagePair {
  double v_a = 0.0;
  double v_b = 0.0;
};

/// Length of the intersection of [core_start, core_end] and
/// [coil_start, coil_end]. Throws Error{invalid_geometry} when either interval
/// has end <= start.
double overlap_length(double core_start, double core_end, double coil_start, double coil_end);

/// Covered fraction of a secondary coil for the given core position.
double coupling_fraction(const SensorGeometry& geometry, Coil coil, double core_position_mm);

/// Slice-counting estimate of coupling_fraction: the coil is cut into
/// n_slices equal slices and the slices whose midpoints lie under the core
/// are counted. Agrees with the analytic value to within 1/n_slices.
double coupling_oracle(const SensorGeometry& geometry, Coil coil, double core_position_mm,
                       std::size_t n_slices);

/// I = V / sqrt((R_series + R_primary)^2 + X(f)^2). Throws
/// Error{singular_circuit} when the total impedance is zero.
double primary_current_amplitude(const ExcitationConfig& excitation,
                                 const CircuitParams& circuit);

/// Induced amplitude of each secondary: omega * coupling_gain * fraction * I.
VoltagePair secondary_amplitudes(const SensorGeometry& geometry,
                                 const ExcitationConfig& excitation,
                                 const CircuitParams& circuit, double core_position_mm);

/// v_a - v_b; positive when the core is displaced toward coil A.
constexpr double differential_output(const VoltagePair& pair) noexcept {
  return pair.v_a - pair.v_b;
}

double differential_at(const SensorGeometry& geometry, const ExcitationConfig& excitation,
                       const CircuitParams& circuit, double core_position_mm);

/// Slope d(v_a - v_b)/dx at the geometric centre in V/mm. Negative for the
/// default layout, since moving toward +x uncovers coil A.
double differential_sensitivity(const SensorGeometry& geometry,
                                const ExcitationConfig& excitation,
                                const CircuitParams& circuit);

/// Half-width of the band around the centre where both coils are partially
/// covered and neither edge of the core has crossed a coil end, so the
/// differential is strictly linear. Zero if no such band exists.
double linear_half_range(const SensorGeometry& geometry);

}  // namespace lvdt
