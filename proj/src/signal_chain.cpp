#include "lvdt/signal_chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>

#include "lvdt/error.hpp"
#include "lvdt/kernels.hpp"

namespace lvdt {
namespace {

// Slack for floating duration*frequency products that should be integral.
constexpr double kCycleSlack = 1e-9;

struct SinusoidFit {
  double sin_coeff = 0.0;
  double cos_coeff = 0.0;

  double amplitude() const { return std::hypot(sin_coeff, cos_coeff); }
  // Phase of A*sin(theta + phi).
  double phase() const { return std::atan2(cos_coeff, sin_coeff); }
};

SinusoidFit solve_projection(const kernels::QuadratureSums& q) {
  const double det = q.ss * q.cc - q.sc * q.sc;
  if (!(det > 1e-12 * q.ss * q.cc)) {
    throw Error(ErrorCode::insufficient_window, "sin/cos basis is degenerate over the window");
  }
  return {(q.ys * q.cc - q.yc * q.sc) / det, (q.yc * q.ss - q.ys * q.sc) / det};
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::remainder(phi, two_pi);
  if (phi <= -std::numbers::pi) phi += two_pi;
  return phi;
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace

void Waveform::validate() const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(ErrorCode::invalid_argument, "waveform sample rate must be > 0");
  }
  if (samples.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "waveform needs at least two samples");
  }
}

double rms(const Waveform& waveform) {
  waveform.validate();
  const std::span<const double> s(waveform.samples);
  return std::sqrt(kernels::dot(s, s) / static_cast<double>(s.size()));
}

SynthesizedSignals synthesize(const SensorGeometry& geometry, const ExcitationConfig& excitation,
                              const CircuitParams& circuit, const SynthesisRequest& request) {
  excitation.validate();
  if (!(request.sample_rate_hz > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "sample rate must be > 0");
  }
  if (request.sample_rate_hz < 2.0 * excitation.frequency_hz) {
    throw Error(ErrorCode::aliasing, "sample rate is below twice the excitation frequency");
  }
  if (!(request.duration_s * excitation.frequency_hz >= 1.0 - kCycleSlack)) {
    throw Error(ErrorCode::insufficient_window, "duration covers less than one excitation cycle");
  }
  if (!(request.noise_rms_v >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "noise RMS must be >= 0");
  }

  const double amplitude = differential_at(geometry, excitation, circuit, request.core_position_mm);
  const auto n = static_cast<std::size_t>(std::llround(request.duration_s * request.sample_rate_hz));
  const double omega = excitation.angular_frequency();

  SynthesizedSignals out;
  out.reference.sample_rate_hz = request.sample_rate_hz;
  out.differential.sample_rate_hz = request.sample_rate_hz;
  out.reference.samples.resize(n);
  out.differential.samples.resize(n);

  std::mt19937_64 rng(request.seed);
  std::normal_distribution<double> noise(0.0, request.noise_rms_v);
  const bool noisy = request.noise_rms_v > 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double carrier = std::sin(omega * out.reference.time_at(i));
    out.reference.samples[i] = excitation.amplitude_v * carrier;
    out.differential.samples[i] = amplitude * carrier + (noisy ? noise(rng) : 0.0);
  }
  return out;
}

double estimate_frequency(const Waveform& waveform) {
  waveform.validate();
  const auto& r = waveform.samples;
  const double dt = 1.0 / waveform.sample_rate_hz;
  double first = 0.0;
  double last = 0.0;
  std::size_t crossings = 0;
  auto record = [&](double t) {
    if (crossings == 0) first = t;
    last = t;
    ++crossings;
  };
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (r[i] == 0.0) {
      // Exact zero sample: a crossing if the neighbours straddle it.
      const bool at_start = i == 0 && r[1] != 0.0;
      const bool straddled = i > 0 && r[i - 1] != 0.0 && r[i + 1] != 0.0 &&
                             sign_of(r[i - 1]) != sign_of(r[i + 1]);
      if (at_start || straddled) record(static_cast<double>(i) * dt);
    } else if (r[i + 1] != 0.0 && sign_of(r[i]) != sign_of(r[i + 1])) {
      const double frac = r[i] / (r[i] - r[i + 1]);
      record((static_cast<double>(i) + frac) * dt);
    }
  }
  if (crossings < 2 || !(last > first)) {
    throw Error(ErrorCode::insufficient_window, "reference has fewer than two zero crossings");
  }
  // Consecutive crossings are half a period apart.
  return static_cast<double>(crossings - 1) / (2.0 * (last - first));
}

DemodResult demodulate(const Waveform& signal, const Waveform& reference) {
  signal.validate();
  reference.validate();
  if (signal.sample_rate_hz != reference.sample_rate_hz) {
    throw Error(ErrorCode::shape_mismatch, "signal and reference sample rates differ");
  }
  if (signal.samples.size() != reference.samples.size()) {
    throw Error(ErrorCode::shape_mismatch, "signal and reference lengths differ");
  }
  const bool silent = std::all_of(reference.samples.begin(), reference.samples.end(),
                                  [](double v) { return v == 0.0; });
  if (silent) throw Error(ErrorCode::no_reference, "reference waveform is all zeros");

  const double frequency = estimate_frequency(reference);
  const double fs = reference.sample_rate_hz;
  const auto total = reference.samples.size();
  const double cycles = std::floor(static_cast<double>(total) * frequency / fs + kCycleSlack);
  if (cycles < 1.0) {
    throw Error(ErrorCode::insufficient_window, "less than one reference cycle available");
  }
  const auto window =
      std::min(total, static_cast<std::size_t>(std::llround(cycles * fs / frequency)));

  const double omega = 2.0 * std::numbers::pi * frequency;
  std::vector<double> sin_basis(window);
  std::vector<double> cos_basis(window);
  for (std::size_t i = 0; i < window; ++i) {
    const double theta = omega * reference.time_at(i);
    sin_basis[i] = std::sin(theta);
    cos_basis[i] = std::cos(theta);
  }

  const std::span<const double> ref(reference.samples.data(), window);
  const std::span<const double> sig(signal.samples.data(), window);
  const SinusoidFit ref_fit = solve_projection(kernels::quadrature_sums(ref, sin_basis, cos_basis));
  const SinusoidFit sig_fit = solve_projection(kernels::quadrature_sums(sig, sin_basis, cos_basis));

  const double magnitude = sig_fit.amplitude();
  if (magnitude == 0.0) return {0.0, 0.0};
  const double offset = wrap_phase(sig_fit.phase() - ref_fit.phase());
  const double in_phase = std::cos(offset);
  return {in_phase >= 0.0 ? magnitude : -magnitude, offset};
}

double position_from_differential(double signed_amplitude_v, double sensitivity_v_per_mm,
                                  double center_offset_mm) {
  if (sensitivity_v_per_mm == 0.0 || !std::isfinite(sensitivity_v_per_mm)) {
    throw Error(ErrorCode::uncalibrated, "sensitivity is zero; probe is not calibrated");
  }
  return signed_amplitude_v / sensitivity_v_per_mm + center_offset_mm;
}

double force_from_position(double displacement_mm, double spring_constant_n_per_mm) {
  if (!(spring_constant_n_per_mm > 0.0) || !std::isfinite(spring_constant_n_per_mm)) {
    throw Error(ErrorCode::invalid_calibration, "spring constant must be > 0");
  }
  return spring_constant_n_per_mm * displacement_mm;
}

ProbeCalibration ideal_calibration(const SensorGeometry& geometry,
                                   const ExcitationConfig& excitation,
                                   const CircuitParams& circuit, double rest_position_mm) {
  ProbeCalibration cal;
  cal.sensitivity_v_per_mm = differential_sensitivity(geometry, excitation, circuit);
  cal.rest_position_mm = rest_position_mm;
  cal.rest_output_v = differential_at(geometry, excitation, circuit, rest_position_mm);
  cal.spring_constant_n_per_mm = geometry.spring_constant_n_per_mm;
  return cal;
}

ForceMeasurement measure_force(const Waveform& differential, const Waveform& reference,
                               const ProbeCalibration& calibration) {
  ForceMeasurement m;
  m.demod = demodulate(differential, reference);
  m.core_position_mm =
      position_from_differential(m.demod.signed_amplitude - calibration.rest_output_v,
                                 calibration.sensitivity_v_per_mm, calibration.rest_position_mm);
  m.displacement_mm = m.core_position_mm - calibration.rest_position_mm;
  m.force_n = force_from_position(m.displacement_mm, calibration.spring_constant_n_per_mm);
  return m;
}

}  // namespace lvdt
