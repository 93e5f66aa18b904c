#include "lvdt/reproduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "lvdt/calibration.hpp"
#include "lvdt/classifier.hpp"
#include "lvdt/contact.hpp"
#include "lvdt/csv.hpp"
#include "lvdt/error.hpp"
#include "lvdt/probe_model.hpp"
#include "lvdt/reference_data.hpp"
#include "lvdt/signal_chain.hpp"
#include "lvdt/synthetic.hpp"

namespace lvdt {
namespace {

using csv::format_number;

constexpr std::array<std::pair<Target, std::string_view>, 6> kTargets{{
    {Target::table1, "table1"},
    {Target::table2, "table2"},
    {Target::table3, "table3"},
    {Target::fig7, "fig7"},
    {Target::fig9, "fig9"},
    {Target::fig10, "fig10"},
}};

// Acceptance thresholds.
constexpr double kCircuitMaxResidual = 0.05;
constexpr double kRoundTripTolerance = 1e-6;
constexpr double kMiscalibration = 0.044;
constexpr double kSensitivityTolerance = 1e-6;
constexpr double kSweepStep = 0.2;
constexpr double kSpringTolerance = 0.005;
constexpr int kSpringTrials = 100;
constexpr int kSpringPassesRequired = 95;
constexpr double kBenchNoise = 0.01;
constexpr int kClassifierTrials = 100;
constexpr int kClassifierPassesRequired = 99;
// Expected slopes are quoted to three decimals.
constexpr std::array<double, 3> kExpectedSlopes{0.973, 1.047, 1.299};
constexpr double kSlopeTolerance = 5e-4;

std::string fmt(const char* pattern, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern, value);
  return buf;
}

std::string slug(std::string name) {
  std::replace(name.begin(), name.end(), ' ', '_');
  return name;
}

class Writer {
 public:
  Writer(Report& report, std::filesystem::path dir) : report_(report), dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }
  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    csv::write_file_atomic(path, content);
    report_.files.push_back(path);
  }

 private:
  Report& report_;
  std::filesystem::path dir_;
};

void check(Report& r, std::string name, bool passed, std::string detail) {
  r.checks.push_back({std::move(name), passed, std::move(detail)});
}

Report table1(Writer& out, Report r) {
  const CircuitFit fit = fit_circuit_params(reference::kCircuitRows);
  csv::Document doc;
  doc.header = {"resistance_ohm", "excitation_v", "experiment_v", "fem_v",   "model_v",
                "model_error_pct", "fem_error_pct"};
  for (std::size_t i = 0; i < reference::kCircuitRows.size(); ++i) {
    const Table1Row& row = reference::kCircuitRows[i];
    doc.rows.push_back({format_number(row.series_resistance_ohm), format_number(row.excitation_v),
                        format_number(row.measured_output_v),
                        format_number(reference::kCircuitFemOutputs[i]),
                        format_number(circuit_output(fit.params, row.series_resistance_ohm,
                                                     row.excitation_v)),
                        format_number(100.0 * fit.relative_residuals[i]),
                        format_number(reference::kCircuitFemErrorPct[i])});
  }
  out.write("table1.csv", csv::serialize(doc));

  csv::Document params;
  params.header = {"parameter", "value"};
  params.rows = {{"gain", format_number(fit.params.gain)},
                 {"primary_resistance_ohm", format_number(fit.params.primary_resistance_ohm)},
                 {"primary_reactance_ohm", format_number(fit.params.primary_reactance_ohm)},
                 {"objective", format_number(fit.objective)},
                 {"max_abs_residual", format_number(fit.max_abs_residual)}};
  out.write("table1_fit.csv", csv::serialize(params));

  check(r, "circuit model residual", fit.max_abs_residual <= kCircuitMaxResidual,
        fmt("max |relative residual| = %.3f%% (limit 5%%)", 100.0 * fit.max_abs_residual));
  const bool feasible = fit.params.primary_resistance_ohm >= 0.0 &&
                        fit.params.primary_reactance_ohm >= 0.0 && fit.params.gain >= 0.0;
  check(r, "fitted parameters feasible", feasible,
        "R_primary = " + format_number(fit.params.primary_resistance_ohm) +
            " ohm, X = " + format_number(fit.params.primary_reactance_ohm) + " ohm");
  return r;
}

Report table2(Writer& out, Report r) {
  const SensorGeometry geometry;
  const ExcitationConfig excitation;
  const CircuitParams circuit;
  // Rest at the coil-A edge of the linear band so the full band is usable
  // under load.
  const double rest = geometry.center_mm() - linear_half_range(geometry);
  const ProbeCalibration ideal = ideal_calibration(geometry, excitation, circuit, rest);
  ProbeCalibration skewed = ideal;
  skewed.sensitivity_v_per_mm *= 1.0 + kMiscalibration;
  const double expected_error = -kMiscalibration / (1.0 + kMiscalibration);

  csv::Document doc;
  doc.header = {"applied_force_n", "bench_calculated_n", "bench_error_pct", "simulated_force_n",
                "simulated_error_pct", "miscalibrated_force_n", "miscalibrated_error_pct"};
  double worst_round_trip = 0.0;
  double worst_skew_gap = 0.0;
  for (const auto& bench : reference::kForceChecks) {
    const double x = bench.applied_n / geometry.spring_constant_n_per_mm;
    SynthesisRequest request;
    request.core_position_mm = rest + x;
    const SynthesizedSignals s = synthesize(geometry, excitation, circuit, request);
    const double f_ideal = measure_force(s.differential, s.reference, ideal).force_n;
    const double f_skew = measure_force(s.differential, s.reference, skewed).force_n;
    const double e_ideal = (f_ideal - bench.applied_n) / bench.applied_n;
    const double e_skew = (f_skew - bench.applied_n) / bench.applied_n;
    worst_round_trip = std::max(worst_round_trip, std::abs(e_ideal));
    worst_skew_gap = std::max(worst_skew_gap, std::abs(e_skew - expected_error));
    doc.rows.push_back({format_number(bench.applied_n), format_number(bench.calculated_n),
                        format_number(bench.error_pct), format_number(f_ideal),
                        format_number(100.0 * e_ideal), format_number(f_skew),
                        format_number(100.0 * e_skew)});
  }
  out.write("table2.csv", csv::serialize(doc));

  check(r, "ideal force round trip", worst_round_trip <= kRoundTripTolerance,
        fmt("max relative error %.3e (limit 1e-6)", worst_round_trip));
  check(r, "4.4% sensitivity error propagation",
        worst_skew_gap <= kRoundTripTolerance * std::abs(expected_error),
        fmt("force error %.4f%% ", 100.0 * std::abs(expected_error)) +
            fmt("= 4.4%%/1.044, deviation %.3e", worst_skew_gap));
  check(r, "propagated error within bench maximum",
        100.0 * std::abs(expected_error) <= reference::kMaxForceErrorPct,
        fmt("%.4f%% <= 4.4%%", 100.0 * std::abs(expected_error)));
  return r;
}

Report table3(Writer& out, Report r) {
  const MaterialLibrary library = reference::materials_library();
  out.write("table3_materials.csv", csv::library_to_csv(library));
  const double k = reference::kSpringConstant;
  csv::Document doc;
  doc.header = {"material", "youngs_modulus_mpa", "punch_stiffness_n_per_mm",
                "expected_slope_n_per_mm", "inferred_stiffness_n_per_mm"};
  std::vector<double> slopes;
  for (const Material& m : library.entries) {
    const Specimen specimen = reference::specimen_for(m, library.poisson_ratio);
    const double ks = punch_stiffness(specimen, library.tip_radius_mm);
    const double slope = series_stiffness(k, ks);
    slopes.push_back(slope);
    std::string inferred = "saturated";
    try {
      inferred = format_number(infer_specimen_stiffness(slope, k));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::saturated_measurement) throw;
    }
    doc.rows.push_back({m.name, format_number(m.youngs_modulus_mpa), format_number(ks),
                        format_number(slope), inferred});
  }
  out.write("table3.csv", csv::serialize(doc));

  const bool ordered = std::is_sorted(slopes.begin(), slopes.end()) &&
                       std::adjacent_find(slopes.begin(), slopes.end()) == slopes.end();
  check(r, "slope ordering follows modulus", ordered, "paraffin gel < silicon rubber < polyurethane");
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    check(r, "expected slope " + library.entries[i].name,
          std::abs(slopes[i] - kExpectedSlopes[i]) <= kSlopeTolerance,
          fmt("%.4f N/mm", slopes[i]) + fmt(" (reference %.3f)", kExpectedSlopes[i]));
  }
  return r;
}

Report fig7(Writer& out, Report r) {
  const SensorGeometry geometry;
  const ExcitationConfig excitation;
  const CircuitParams circuit;
  // Start with coil A fully covered and the core edge at the mouth of coil B.
  const double start = geometry.coil_b.start_mm - 0.5 * geometry.core_length_mm;
  const double stop = geometry.coil_a.end_mm + 0.5 * geometry.core_length_mm - 2.0;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / kSweepStep + 1e-9)) + 1;
  std::vector<double> x(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = start + kSweepStep * static_cast<double>(i);
    v[i] = secondary_amplitudes(geometry, excitation, circuit, x[i]).v_a;
  }
  out.write("fig7_output_function.csv", csv::series_to_csv({"core_position_mm", "v_a", x, v}));

  const SensitivityCalibration cal = calibrate_sensitivity(x, v);
  const double configured = excitation.angular_frequency() * geometry.coupling_gain *
                            primary_current_amplitude(excitation, circuit) /
                            geometry.coil_a.length();
  // Coil A stays fully covered until the core's trailing end passes its start.
  const double edge = geometry.coil_a.start_mm + 0.5 * geometry.core_length_mm;
  const double rel = std::abs(cal.sensitivity_v_per_mm - configured) / configured;
  const double edge_gap = std::abs(cal.linear_region.start_mm - edge);

  csv::Document doc;
  doc.header = {"quantity", "value"};
  doc.rows = {{"sensitivity_v_per_mm", format_number(cal.sensitivity_v_per_mm)},
              {"configured_v_per_mm", format_number(configured)},
              {"region_start_mm", format_number(cal.linear_region.start_mm)},
              {"region_end_mm", format_number(cal.linear_region.end_mm)},
              {"r_squared", format_number(cal.fit.r_squared)}};
  out.write("fig7_sensitivity.csv", csv::serialize(doc));

  bool plateau_flat = true;
  for (std::size_t i = 0; i < n && x[i] <= edge; ++i) plateau_flat &= v[i] == v[0];
  check(r, "plateau while coil A is covered", plateau_flat, "constant output before the edge");
  check(r, "sensitivity recovered", rel <= kSensitivityTolerance,
        fmt("relative error %.3e (limit 1e-6)", rel));
  check(r, "plateau edge located", edge_gap <= kSweepStep + 1e-9,
        fmt("edge at %.3f mm", cal.linear_region.start_mm) + fmt(" (model %.3f mm)", edge));
  check(r, "linear region fit", cal.fit.r_squared >= 0.999, fmt("R^2 = %.12f", cal.fit.r_squared));
  return r;
}

Report fig9(Writer& out, Report r) {
  constexpr double kMaxElongation = 5.0;
  constexpr std::size_t kPoints = 200;
  csv::Document fits;
  fits.header = {"seed", "spring_constant_n_per_mm", "relative_error"};
  int within = 0;
  for (int trial = 1; trial <= kSpringTrials; ++trial) {
    const auto seed = static_cast<std::uint64_t>(trial);
    const synthetic::SpringTrace t = synthetic::spring_trace(
        reference::kSpringConstant, kMaxElongation, kPoints, kBenchNoise, seed);
    if (trial == 1) {
      out.write("fig9_spring_trace.csv",
                csv::series_to_csv({"elongation_mm", "force_n", t.elongation_mm, t.force_n}));
    }
    const SpringCalibration cal = calibrate_spring(t.elongation_mm, t.force_n);
    const double rel =
        (cal.spring_constant_n_per_mm - reference::kSpringConstant) / reference::kSpringConstant;
    if (std::abs(rel) <= kSpringTolerance) ++within;
    fits.rows.push_back({std::to_string(trial), format_number(cal.spring_constant_n_per_mm),
                         format_number(rel)});
  }
  out.write("fig9_fits.csv", csv::serialize(fits));
  check(r, "spring constant within 0.5%", within >= kSpringPassesRequired,
        std::to_string(within) + "/100 trials (need 95)");
  return r;
}

Report fig10(Writer& out, Report r) {
  const MaterialLibrary library = reference::materials_library();
  SensorGeometry geometry;
  geometry.spring_constant_n_per_mm = reference::kSpringConstant;
  IndentationProtocol protocol;
  protocol.max_stage_displacement_mm = reference::kIndentationDepth;
  protocol.n_steps = 100;
  protocol.tip_radius_mm = library.tip_radius_mm;
  const auto candidates = expected_slopes(library, geometry.spring_constant_n_per_mm);

  csv::Document combined;
  combined.header = {"displacement_mm"};
  std::vector<IndentationTrace> traces;
  for (const Material& m : library.entries) {
    traces.push_back(simulate_indentation(
        geometry, reference::specimen_for(m, library.poisson_ratio), protocol));
    combined.header.push_back(slug(m.name) + "_force_n");
    out.write("fig10_" + slug(m.name) + ".csv", csv::trace_to_csv(traces.back()));
  }
  for (std::size_t i = 0; i < traces.front().samples.size(); ++i) {
    std::vector<std::string> row{format_number(traces.front().samples[i].displacement_mm)};
    for (const auto& t : traces) row.push_back(format_number(t.samples[i].force_n));
    combined.rows.push_back(std::move(row));
  }
  out.write("fig10_traces.csv", csv::serialize(combined));

  std::vector<double> end_force;
  std::vector<double> slopes;
  int noiseless_correct = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    end_force.push_back(traces[i].samples.back().force_n);
    slopes.push_back(estimate_contact_stiffness(traces[i]));
    if (classify(traces[i], library, geometry.spring_constant_n_per_mm).label ==
        library.entries[i].name) {
      ++noiseless_correct;
    }
  }
  // Library order is paraffin gel, silicon rubber, polyurethane.
  check(r, "force ordering at 1 mm", end_force[2] > end_force[1] && end_force[1] > end_force[0],
        fmt("polyurethane %.4f N", end_force[2]) + fmt(" > silicon rubber %.4f N", end_force[1]) +
            fmt(" > paraffin gel %.4f N", end_force[0]));
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    check(r, "trace slope " + library.entries[i].name,
          std::abs(slopes[i] - kExpectedSlopes[i]) <= kSlopeTolerance,
          fmt("%.4f N/mm", slopes[i]) + fmt(" (reference %.3f)", kExpectedSlopes[i]));
  }
  check(r, "noiseless classification", noiseless_correct == 3,
        std::to_string(noiseless_correct) + "/3 correct");

  csv::Document trials;
  trials.header = {"material", "correct", "trials"};
  for (std::size_t i = 0; i < traces.size(); ++i) {
    int correct = 0;
    for (int t = 0; t < kClassifierTrials; ++t) {
      const auto seed = static_cast<std::uint64_t>(1000 * (i + 1) + static_cast<std::size_t>(t));
      const IndentationTrace noisy = synthetic::with_force_noise(traces[i], kBenchNoise, seed);
      if (classify_slope(estimate_contact_stiffness(noisy), candidates).label ==
          library.entries[i].name) {
        ++correct;
      }
    }
    trials.rows.push_back(
        {library.entries[i].name, std::to_string(correct), std::to_string(kClassifierTrials)});
    check(r, "noisy classification " + library.entries[i].name,
          correct >= kClassifierPassesRequired, std::to_string(correct) + "/100 (need 99)");
  }
  out.write("fig10_classification.csv", csv::serialize(trials));
  return r;
}

}  // namespace

std::optional<Target> parse_target(std::string_view name) {
  for (const auto& [target, label] : kTargets) {
    if (label == name) return target;
  }
  return std::nullopt;
}

std::string_view to_string(Target target) {
  for (const auto& [t, label] : kTargets) {
    if (t == target) return label;
  }
  return "unknown";
}

bool Report::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Report::summary() const {
  std::string out;
  for (const Check& c : checks) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name + ": " + c.detail + "\n";
  }
  out += std::string(to_string(target)) + ": " + (passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

Report reproduce(Target target, const std::filesystem::path& out_dir) {
  Report report;
  report.target = target;
  Writer out(report, out_dir);
  switch (target) {
    case Target::table1: return table1(out, std::move(report));
    case Target::table2: return table2(out, std::move(report));
    case Target::table3: return table3(out, std::move(report));
    case Target::fig7: return fig7(out, std::move(report));
    case Target::fig9: return fig9(out, std::move(report));
    case Target::fig10: return fig10(out, std::move(report));
  }
  return report;
}

}  // namespace lvdt
