#pragma once

// Quasi-static indentation of an elastic block by the spring-loaded probe.
//
// The specimen surface is a rigid flat cylindrical punch on a linear elastic
// half-space, k_s = 2 a E / (1 - nu^2). The probe spring and the specimen
// carry the same force and share the stage displacement, so the measured
// force-displacement slope is the series combination of the two stiffnesses.
// Block height is not modelled; the half-space formula is a fair stand-in for
// indentations that are small against the block height.

#include <optional>
#include <string>
#include <vector>

#include "lvdt/probe_model.hpp"

namespace lvdt {

struct Specimen {
  std::string name;
  double youngs_modulus_mpa = 0.0;  // N/mm^2
  double poisson_ratio = 0.45;
  double width_mm = 30.0;
  double depth_mm = 30.0;
  double height_mm = 20.0;

  /// Throws Error{invalid_argument} for non-positive modulus or dimensions,
  /// or a negative Poisson ratio, and Error{incompressible_limit} for nu >= 0.5.
  void validate() const;
};

struct IndentationProtocol {
  double max_stage_displacement_mm = 1.0;
  int n_steps = 100;
  double tip_radius_mm = 2.0;

  void validate() const;
};

struct IndentationSample {
  double displacement_mm = 0.0;
  double force_n = 0.0;
};

struct IndentationTrace {
  std::string specimen_name;
  IndentationProtocol protocol;
  std::vector<IndentationSample> samples;
  std::vector<std::string> warnings;
};

/// Flat-punch contact stiffness in N/mm.
double punch_stiffness(const Specimen& specimen, double tip_radius_mm);

/// A note when the tip is not small against the block footprint (radius above
/// a tenth of the smaller lateral dimension). The half-space formula is
/// only approximate there.
std::optional<std::string> tip_size_warning(const Specimen& specimen, double tip_radius_mm);

struct SeriesState {
  double spring_compression_mm = 0.0;
  double indentation_mm = 0.0;
  double force_n = 0.0;
};

/// Splits a stage displacement between the probe spring and the specimen.
/// An infinite specimen stiffness is the rigid limit. Throws
/// Error{invalid_stiffness} for non-positive stiffness and
/// Error{invalid_argument} for a negative displacement.
SeriesState series_equilibrium(double k_spring, double k_specimen, double stage_displacement_mm);

/// (1/k_spring + 1/k_specimen)^-1.
double series_stiffness(double k_spring, double k_specimen);

/// n_steps equally spaced stage displacements on [0, max]; the force at each
/// comes from series_equilibrium with the probe spring of `geometry`.
IndentationTrace simulate_indentation(const SensorGeometry& geometry, const Specimen& specimen,
                                      const IndentationProtocol& protocol);

}  // namespace lvdt
