#include "lvdt/classifier.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "lvdt/error.hpp"
#include "lvdt/kernels.hpp"

namespace lvdt {

void MaterialLibrary::validate() const {
  if (entries.size() < 2) {
    throw Error(ErrorCode::validation, "material library needs at least two entries");
  }
  std::set<std::string> names;
  for (const Material& m : entries) {
    if (!names.insert(m.name).second) {
      throw Error(ErrorCode::validation, "duplicate material name '" + m.name + "'");
    }
    if (!(m.youngs_modulus_mpa > 0.0) || !std::isfinite(m.youngs_modulus_mpa)) {
      throw Error(ErrorCode::validation, "material '" + m.name + "' needs a positive modulus");
    }
  }
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5)) {
    throw Error(ErrorCode::validation, "library Poisson ratio must be in [0, 0.5)");
  }
  if (!(tip_radius_mm > 0.0)) throw Error(ErrorCode::validation, "tip radius must be > 0");
}

double estimate_contact_stiffness(const IndentationTrace& trace) {
  const auto& samples = trace.samples;
  if (samples.size() < 2) throw Error(ErrorCode::malformed_trace, "trace needs >= 2 samples");
  std::vector<double> d(samples.size());
  std::vector<double> f(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    d[i] = samples[i].displacement_mm;
    f[i] = samples[i].force_n;
    if (i > 0 && !(d[i] > d[i - 1])) {
      throw Error(ErrorCode::malformed_trace, "trace displacements must strictly increase");
    }
  }
  const double sdd = kernels::dot(d, d);
  const double slope = sdd > 0.0 ? kernels::dot(d, f) / sdd : 0.0;
  if (!(slope > 0.0)) throw Error(ErrorCode::non_contact, "trace shows no contact force");
  return slope;
}

double infer_specimen_stiffness(double k_eff, double k_spring) {
  if (!(k_spring > 0.0)) throw Error(ErrorCode::invalid_argument, "spring constant must be > 0");
  if (!(k_eff > 0.0)) throw Error(ErrorCode::invalid_argument, "contact stiffness must be > 0");
  if (k_eff >= k_spring * (1.0 - kSaturationTolerance)) {
    throw Error(ErrorCode::saturated_measurement,
                "contact stiffness is saturated against the spring; specimen is unresolvable");
  }
  return 1.0 / (1.0 / k_eff - 1.0 / k_spring);
}

std::vector<SlopeCandidate> expected_slopes(const MaterialLibrary& library, double k_spring) {
  library.validate();
  std::vector<SlopeCandidate> out;
  out.reserve(library.entries.size());
  for (const Material& m : library.entries) {
    Specimen specimen;
    specimen.name = m.name;
    specimen.youngs_modulus_mpa = m.youngs_modulus_mpa;
    specimen.poisson_ratio = library.poisson_ratio;
    out.push_back({m.name, series_stiffness(k_spring, punch_stiffness(specimen, library.tip_radius_mm))});
  }
  return out;
}

ClassificationResult classify_slope(double slope, std::span<const SlopeCandidate> candidates) {
  if (!(slope > 0.0)) throw Error(ErrorCode::non_contact, "slope must be > 0");
  if (candidates.empty()) throw Error(ErrorCode::validation, "no candidates to classify against");

  const double log_slope = std::log(slope);
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double distance = std::abs(log_slope - std::log(candidates[i].expected_slope_n_per_mm));
    if (distance < best_distance - kTieTolerance) {
      runner_up = best_distance;
      best_distance = distance;
      best = i;
    } else {
      runner_up = std::min(runner_up, distance);
    }
  }

  ClassificationResult result;
  result.label = candidates[best].name;
  result.estimated_slope_n_per_mm = slope;
  if (std::isfinite(runner_up)) {
    const double gap = runner_up - best_distance;
    result.log_distance_margin = gap > kTieTolerance ? gap : 0.0;
  }
  return result;
}

ClassificationResult classify(const IndentationTrace& trace, const MaterialLibrary& library,
                              double k_spring) {
  const double slope = estimate_contact_stiffness(trace);
  const auto candidates = expected_slopes(library, k_spring);
  ClassificationResult result = classify_slope(slope, candidates);
  if (slope < k_spring * (1.0 - kSaturationTolerance)) {
    result.estimated_specimen_stiffness_n_per_mm = infer_specimen_stiffness(slope, k_spring);
  }
  return result;
}

}  // namespace lvdt
