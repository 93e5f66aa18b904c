#include "lvdt/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lvdt/error.hpp"

namespace lvdt {
namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void require_stiffness(double k, const char* what) {
  // +inf is the rigid limit and allowed.
  if (!(k > 0.0) || std::isnan(k)) {
    throw Error(ErrorCode::invalid_stiffness, std::string(what) + " must be > 0");
  }
}

}  // namespace

void Specimen::validate() const {
  if (!finite_positive(youngs_modulus_mpa)) {
    throw Error(ErrorCode::invalid_argument, "specimen '" + name + "': Young's modulus must be > 0");
  }
  if (!(poisson_ratio >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "specimen '" + name + "': Poisson ratio must be >= 0");
  }
  if (poisson_ratio >= 0.5) {
    throw Error(ErrorCode::incompressible_limit,
                "specimen '" + name + "': Poisson ratio must be < 0.5");
  }
  if (!finite_positive(width_mm) || !finite_positive(depth_mm) || !finite_positive(height_mm)) {
    throw Error(ErrorCode::invalid_argument, "specimen '" + name + "': dimensions must be > 0");
  }
}

void IndentationProtocol::validate() const {
  if (!finite_positive(max_stage_displacement_mm)) {
    throw Error(ErrorCode::invalid_argument, "max stage displacement must be > 0");
  }
  if (n_steps < 2) throw Error(ErrorCode::invalid_argument, "n_steps must be >= 2");
  if (!finite_positive(tip_radius_mm)) {
    throw Error(ErrorCode::invalid_argument, "tip radius must be > 0");
  }
}

double punch_stiffness(const Specimen& specimen, double tip_radius_mm) {
  specimen.validate();
  if (!finite_positive(tip_radius_mm)) {
    throw Error(ErrorCode::invalid_argument, "tip radius must be > 0");
  }
  const double nu = specimen.poisson_ratio;
  return 2.0 * tip_radius_mm * specimen.youngs_modulus_mpa / (1.0 - nu * nu);
}

std::optional<std::string> tip_size_warning(const Specimen& specimen, double tip_radius_mm) {
  const double lateral = std::min(specimen.width_mm, specimen.depth_mm);
  if (tip_radius_mm > 0.1 * lateral) {
    return "tip radius " + std::to_string(tip_radius_mm) + " mm exceeds a tenth of the '" +
           specimen.name + "' footprint; half-space stiffness is approximate";
  }
  return std::nullopt;
}

double series_stiffness(double k_spring, double k_specimen) {
  require_stiffness(k_spring, "spring stiffness");
  require_stiffness(k_specimen, "specimen stiffness");
  if (std::isinf(k_specimen)) return k_spring;
  if (std::isinf(k_spring)) return k_specimen;
  return k_spring * k_specimen / (k_spring + k_specimen);
}

SeriesState series_equilibrium(double k_spring, double k_specimen, double stage_displacement_mm) {
  require_stiffness(k_spring, "spring stiffness");
  require_stiffness(k_specimen, "specimen stiffness");
  if (!(stage_displacement_mm >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "stage displacement must be >= 0");
  }
  if (std::isinf(k_spring) && std::isinf(k_specimen)) {
    throw Error(ErrorCode::invalid_stiffness, "spring and specimen cannot both be rigid");
  }
  SeriesState s;
  if (std::isinf(k_specimen)) {
    s.spring_compression_mm = stage_displacement_mm;
    s.indentation_mm = 0.0;
    s.force_n = k_spring * stage_displacement_mm;
    return s;
  }
  if (std::isinf(k_spring)) {
    s.spring_compression_mm = 0.0;
    s.indentation_mm = stage_displacement_mm;
    s.force_n = k_specimen * stage_displacement_mm;
    return s;
  }
  // Each deformation takes the share set by the other element's stiffness.
  const double total = k_spring + k_specimen;
  s.spring_compression_mm = stage_displacement_mm * (k_specimen / total);
  s.indentation_mm = stage_displacement_mm * (k_spring / total);
  s.force_n = k_spring * s.spring_compression_mm;
  return s;
}

IndentationTrace simulate_indentation(const SensorGeometry& geometry, const Specimen& specimen,
                                      const IndentationProtocol& protocol) {
  geometry.validate();
  protocol.validate();
  const double k_specimen = punch_stiffness(specimen, protocol.tip_radius_mm);
  const double k_spring = geometry.spring_constant_n_per_mm;

  IndentationTrace trace;
  trace.specimen_name = specimen.name;
  trace.protocol = protocol;
  if (auto warning = tip_size_warning(specimen, protocol.tip_radius_mm)) {
    trace.warnings.push_back(std::move(*warning));
  }
  const auto steps = static_cast<std::size_t>(protocol.n_steps);
  trace.samples.reserve(steps);
  const double last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double d = protocol.max_stage_displacement_mm * (static_cast<double>(i) / last);
    trace.samples.push_back({d, series_equilibrium(k_spring, k_specimen, d).force_n});
  }
  return trace;
}

}  // namespace lvdt
