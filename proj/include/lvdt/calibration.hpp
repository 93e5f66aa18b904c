#pragma once

// Least-squares calibration: straight-line fits, the probe spring constant,
// the output sensitivity with plateau rejection, and the bounded fit of the
// primary-circuit output model to bench measurements.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvdt/probe_model.hpp"

namespace lvdt {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;  // clamped to [0, 1]; 1 for constant data
  std::size_t n_points = 0;

  double predict(double x) const noexcept { return slope * x + intercept; }
};

/// Ordinary least squares y = slope * x + intercept.
///
/// Needs at least two points and two distinct x values; all-equal abscissae
/// raise Error{degenerate_abscissa}.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct SpringCalibration {
  double spring_constant_n_per_mm = 0.0;
  LineFit fit;
  std::optional<std::string> warning;  // set when R^2 is below the threshold
};

/// Spring constant from a force-elongation trace: the fitted slope. Throws
/// Error{calibration_failure} when the slope is not positive.
SpringCalibration calibrate_spring(std::span<const double> elongation_mm,
                                   std::span<const double> force_n, double min_r_squared = 0.99);

struct SensitivityOptions {
  // A segment is plateau when its slope magnitude is below this fraction of
  // the steepest segment.
  double plateau_fraction = 0.10;
  // The outermost segment at each end of the detected ramp is dropped when its
  // slope differs from the ramp median by more than this fraction. Catches a
  // step that straddles the plateau corner.
  double edge_tolerance = 1e-6;
};

struct SensitivityCalibration {
  double sensitivity_v_per_mm = 0.0;  // |slope| over the linear region
  Interval linear_region;
  LineFit fit;
};

/// Sensitivity from an amplitude-vs-position sweep. The longest run of
/// non-plateau segments is taken as the linear region and fitted.
///
/// Needs >= 4 samples at strictly increasing positions. Throws
/// Error{flat_response} when every segment is plateau.
SensitivityCalibration calibrate_sensitivity(std::span<const double> position_mm,
                                             std::span<const double> amplitude_v,
                                             const SensitivityOptions& options = {});

struct Table1Row {
  double series_resistance_ohm = 0.0;
  double excitation_v = 0.0;
  double measured_output_v = 0.0;
};

/// gain * V_exc / sqrt((R_series + R_primary)^2 + X^2), with X taken at the
/// circuit's reference frequency.
double circuit_output(const CircuitParams& circuit, double series_resistance_ohm,
                      double excitation_v);

/// Sum of squared relative residuals of circuit_output over `rows`.
double circuit_objective(const CircuitParams& circuit, std::span<const Table1Row> rows);

struct CircuitFitOptions {
  // Search box for R_primary and X. Zero means four times the largest series
  // resistance in the data.
  double max_resistance_ohm = 0.0;
  double max_reactance_ohm = 0.0;
  int grid_points = 50;
  // Pattern search stops once its step is below this fraction of the box.
  double step_tolerance = 1e-13;
};

struct CircuitFit {
  CircuitParams params;
  std::vector<double> relative_residuals;  // (predicted - measured) / measured
  double max_abs_residual = 0.0;
  double objective = 0.0;
};

/// Bounded least squares of the circuit output model on relative error, with
/// R_primary, X >= 0. The gain has a closed form for fixed (R_primary, X), so
/// the search runs over those two: a full grid, then a deterministic compass
/// search from the best grid nodes.
///
/// Throws Error{underdetermined} for fewer than three rows or fewer than three
/// distinct resistances, Error{invalid_argument} for non-positive row values.
CircuitFit fit_circuit_params(std::span<const Table1Row> rows,
                              const CircuitFitOptions& options = {});

}  // namespace lvdt
