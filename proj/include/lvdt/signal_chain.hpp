#pragma once

// Time-domain side of the probe: waveform synthesis, synchronous quadrature
// demodulation, and the conversion from demodulated differential voltage to
// core position and contact force.

#include <cstdint>
#include <vector>

#include "lvdt/probe_model.hpp"

namespace lvdt {

struct Waveform {
  double sample_rate_hz = 0.0;
  std::vector<double> samples;

  /// Throws Error{invalid_argument} unless sample_rate_hz > 0 and there are at
  /// least two samples.
  void validate() const;

  double time_at(std::size_t index) const noexcept {
    return static_cast<double>(index) / sample_rate_hz;
  }
};

double rms(const Waveform& waveform);

struct DemodResult {
  double signed_amplitude = 0.0;  // V, sign of the in-phase component
  double phase_offset_rad = 0.0;  // relative to the reference, in (-pi, pi]
};

struct SynthesisRequest {
  double core_position_mm = 0.0;
  double sample_rate_hz = 100'000.0;
  double duration_s = 0.02;
  double noise_rms_v = 0.0;
  std::uint64_t seed = 0;
};

struct SynthesizedSignals {
  Waveform reference;     // excitation voltage, amplitude * sin(omega t)
  Waveform differential;  // (v_a - v_b) * sin(omega t) + noise
};

/// Samples the excitation and the secondary differential. Noise is additive
/// white Gaussian with the requested RMS, drawn from a generator seeded with
/// `seed`, so repeated calls return identical samples.
///
/// Throws Error{aliasing} below twice the excitation frequency and
/// Error{insufficient_window} for less than one full excitation cycle.
SynthesizedSignals synthesize(const SensorGeometry& geometry, const ExcitationConfig& excitation,
                              const CircuitParams& circuit, const SynthesisRequest& request);

/// Fundamental frequency of a zero-mean periodic waveform from its
/// interpolated zero crossings. Throws Error{insufficient_window} when fewer
/// than two crossings are present.
double estimate_frequency(const Waveform& waveform);

/// Quadrature demodulation of `signal` against `reference`.
///
/// The reference frequency comes from its zero crossings. The analysis window
/// is truncated to the largest whole number of reference cycles, and both
/// waveforms are least-squares projected onto sin/cos at that frequency. The
/// returned magnitude is the signal amplitude; its sign is that of the
/// component in phase with the reference.
///
/// Errors: Error{shape_mismatch} for differing rates or lengths,
/// Error{no_reference} for an all-zero reference.
DemodResult demodulate(const Waveform& signal, const Waveform& reference);

/// position = signed_amplitude / sensitivity + center_offset. Throws
/// Error{uncalibrated} for a zero sensitivity.
double position_from_differential(double signed_amplitude_v, double sensitivity_v_per_mm,
                                  double center_offset_mm);

/// F = k * x. Throws Error{invalid_calibration} unless k > 0.
double force_from_position(double displacement_mm, double spring_constant_n_per_mm);

/// Calibration state the measurement chain needs to turn a demodulated
/// voltage into a force. The probe is tared at its rest position: the
/// differential read there is subtracted before scaling, so displacement is
/// (signed_amplitude - rest_output) / sensitivity.
struct ProbeCalibration {
  double sensitivity_v_per_mm = 0.0;  // signed slope of the differential
  double rest_position_mm = 0.0;      // core position with the spring unloaded
  double rest_output_v = 0.0;         // differential at the rest position
  double spring_constant_n_per_mm = 1.3;
};

/// Calibration read straight off the model for a core resting at
/// `rest_position_mm`.
ProbeCalibration ideal_calibration(const SensorGeometry& geometry,
                                   const ExcitationConfig& excitation,
                                   const CircuitParams& circuit, double rest_position_mm);

struct ForceMeasurement {
  DemodResult demod;
  double core_position_mm = 0.0;
  double displacement_mm = 0.0;
  double force_n = 0.0;
};

ForceMeasurement measure_force(const Waveform& differential, const Waveform& reference,
                               const ProbeCalibration& calibration);

}  // namespace lvdt
