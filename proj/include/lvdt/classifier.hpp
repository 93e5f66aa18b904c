#pragma once

// Stiffness classification from force-displacement traces.
//
// Matching happens in slope space: every library material is forward
// simulated to the trace slope it would produce with this probe, and the
// nearest candidate in log distance wins. Very stiff materials saturate at the
// spring constant, so their modulus is only bounded from below; slope space
// keeps them classifiable anyway.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvdt/contact.hpp"

namespace lvdt {

struct Material {
  std::string name;
  double youngs_modulus_mpa = 0.0;
};

struct MaterialLibrary {
  std::vector<Material> entries;
  double poisson_ratio = 0.45;
  double tip_radius_mm = 2.0;

  /// >= 2 entries, distinct names, positive moduli. Throws
  /// Error{validation} otherwise.
  void validate() const;
};

struct SlopeCandidate {
  std::string name;
  double expected_slope_n_per_mm = 0.0;
};

struct ClassificationResult {
  std::string label;
  double estimated_slope_n_per_mm = 0.0;
  // Empty when the trace slope is saturated against the spring.
  std::optional<double> estimated_specimen_stiffness_n_per_mm;
  // Second-best minus best log distance. Zero on a tie.
  double log_distance_margin = 0.0;
};

/// k_eff within this fraction of k_spring counts as saturated.
inline constexpr double kSaturationTolerance = 1e-3;

/// Log distances closer than this are a tie.
inline constexpr double kTieTolerance = 1e-12;

/// Least-squares slope through the origin, sum(d F) / sum(d^2).
///
/// Errors: Error{malformed_trace} for < 2 samples or displacements that do not
/// strictly increase; Error{non_contact} when the slope is not positive.
double estimate_contact_stiffness(const IndentationTrace& trace);

/// Inverts the series relation: (1/k_eff - 1/k_spring)^-1.
///
/// Errors: Error{invalid_argument} for k_eff <= 0 or k_spring <= 0;
/// Error{saturated_measurement} when k_eff >= k_spring * (1 - kSaturationTolerance).
double infer_specimen_stiffness(double k_eff, double k_spring);

/// Expected trace slope of every library entry under a probe with k_spring.
std::vector<SlopeCandidate> expected_slopes(const MaterialLibrary& library, double k_spring);

/// Nearest candidate to `slope` in |log| distance. Ties go to the earliest
/// candidate and report a zero margin.
ClassificationResult classify_slope(double slope, std::span<const SlopeCandidate> candidates);

ClassificationResult classify(const IndentationTrace& trace, const MaterialLibrary& library,
                              double k_spring);

}  // namespace lvdt
