#include "lvdt/app.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lvdt/calibration.hpp"
#include "lvdt/classifier.hpp"
#include "lvdt/csv.hpp"
#include "lvdt/error.hpp"
#include "lvdt/reference_data.hpp"
#include "lvdt/reproduce.hpp"
#include "lvdt/scenario.hpp"

namespace lvdt {
namespace {

namespace fs = std::filesystem;
using csv::format_number;

struct GlobalOptions {
  std::string config;
  std::string out = "lvdt_out";
  std::optional<std::uint64_t> seed;
};

struct KeyValues {
  std::vector<std::pair<std::string, std::string>> rows;

  void add(std::string key, std::string value) { rows.emplace_back(std::move(key), std::move(value)); }

  std::string csv() const {
    csv::Document doc;
    doc.header = {"quantity", "value"};
    for (const auto& [k, v] : rows) doc.rows.push_back({k, v});
    return csv::serialize(doc);
  }

  void print(std::ostream& out) const {
    for (const auto& [k, v] : rows) out << k << " = " << v << "\n";
  }
};

std::optional<Scenario> load_config(const GlobalOptions& g) {
  if (g.config.empty()) return std::nullopt;
  return parse_scenario(csv::read_file(g.config));
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::io:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

void emit(const GlobalOptions& g, const std::string& name, const std::string& content,
          std::ostream& out) {
  fs::create_directories(g.out);
  const fs::path path = fs::path(g.out) / name;
  csv::write_file_atomic(path, content);
  out << "wrote " << path.string() << "\n";
}

int cmd_simulate(const GlobalOptions& g, std::ostream& out) {
  Scenario scenario = load_config(g).value_or(Scenario::defaults());
  if (g.seed) {
    scenario.signal.seed = *g.seed;
    scenario.seed_given = true;
  }
  for (const auto& path : run_scenario(scenario, g.out)) out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_calibrate(const GlobalOptions& g, const std::string& kind, const std::string& input,
                  std::ostream& out, std::ostream& err) {
  const std::string text = csv::read_file(input);
  KeyValues kv;
  if (kind == "spring") {
    const csv::Series s = csv::series_from_csv(text);
    const SpringCalibration cal = calibrate_spring(s.x, s.y);
    kv.add("spring_constant_n_per_mm", format_number(cal.spring_constant_n_per_mm));
    kv.add("intercept_n", format_number(cal.fit.intercept));
    kv.add("r_squared", format_number(cal.fit.r_squared));
    if (cal.warning) err << "warning: " << *cal.warning << "\n";
  } else if (kind == "sensitivity") {
    const csv::Series s = csv::series_from_csv(text);
    const SensitivityCalibration cal = calibrate_sensitivity(s.x, s.y);
    kv.add("sensitivity_v_per_mm", format_number(cal.sensitivity_v_per_mm));
    kv.add("region_start_mm", format_number(cal.linear_region.start_mm));
    kv.add("region_end_mm", format_number(cal.linear_region.end_mm));
    kv.add("r_squared", format_number(cal.fit.r_squared));
  } else {
    const std::vector<Table1Row> rows = csv::table1_from_csv(text);
    const CircuitFit fit = fit_circuit_params(rows);
    kv.add("gain", format_number(fit.params.gain));
    kv.add("primary_resistance_ohm", format_number(fit.params.primary_resistance_ohm));
    kv.add("primary_reactance_ohm", format_number(fit.params.primary_reactance_ohm));
    for (std::size_t i = 0; i < fit.relative_residuals.size(); ++i) {
      kv.add("relative_residual_" + std::to_string(i + 1), format_number(fit.relative_residuals[i]));
    }
    kv.add("max_abs_residual", format_number(fit.max_abs_residual));
  }
  kv.print(out);
  emit(g, kind + "_calibration.csv", kv.csv(), out);
  return kExitOk;
}

int cmd_classify(const GlobalOptions& g, const std::string& input, const std::string& library_path,
                 std::optional<double> spring_constant, std::ostream& out) {
  const IndentationTrace trace = csv::trace_from_csv(csv::read_file(input));
  const MaterialLibrary library = library_path.empty()
                                      ? reference::materials_library()
                                      : csv::library_from_csv(csv::read_file(library_path));
  double k = reference::kSpringConstant;
  if (const auto scenario = load_config(g)) {
    scenario->validate();
    k = scenario->geometry.spring_constant_n_per_mm;
  }
  if (spring_constant) k = *spring_constant;
  const ClassificationResult r = classify(trace, library, k);
  KeyValues kv;
  kv.add("label", r.label);
  kv.add("estimated_slope_n_per_mm", format_number(r.estimated_slope_n_per_mm));
  kv.add("estimated_specimen_stiffness_n_per_mm",
         r.estimated_specimen_stiffness_n_per_mm
             ? format_number(*r.estimated_specimen_stiffness_n_per_mm)
             : std::string("saturated"));
  kv.add("log_distance_margin", format_number(r.log_distance_margin));
  kv.print(out);
  emit(g, "classification.csv", kv.csv(), out);
  return kExitOk;
}

int cmd_reproduce(const GlobalOptions& g, const std::string& name, std::ostream& out,
                  std::ostream& err) {
  std::vector<Target> targets;
  if (name == "all") {
    targets = {Target::table1, Target::table2, Target::table3,
               Target::fig7,   Target::fig9,   Target::fig10};
  } else if (const auto t = parse_target(name)) {
    targets.push_back(*t);
  } else {
    err << "error: unknown target '" << name
        << "' (expected table1, table2, table3, fig7, fig9, fig10 or all)\n";
    return kExitUsage;
  }
  bool all_passed = true;
  for (const Target t : targets) {
    const Report report = reproduce(t, g.out);
    for (const auto& path : report.files) out << "wrote " << path.string() << "\n";
    out << report.summary();
    all_passed &= report.passed();
  }
  return all_passed ? kExitOk : kExitAcceptanceFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LVDT indentation probe simulator and calibration toolkit", "lvdt"};
  app.require_subcommand(1);
  GlobalOptions g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config, "Scenario file (key = value)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Random seed (u64)");

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write its CSV stages");
  simulate->fallthrough();

  auto* calibrate = app.add_subcommand("calibrate", "Fit a calibration from a CSV file");
  calibrate->fallthrough();
  std::string kind;
  std::string cal_input;
  calibrate->add_option("--kind", kind, "spring, sensitivity or circuit")
      ->required()
      ->check(CLI::IsMember({"spring", "sensitivity", "circuit"}));
  calibrate->add_option("--input", cal_input, "Input CSV")->required();

  auto* classify = app.add_subcommand("classify", "Classify an indentation trace");
  classify->fallthrough();
  std::string trace_input;
  std::string library_path;
  std::optional<double> spring_constant;
  classify->add_option("--input", trace_input, "Trace CSV (displacement_mm, force_n)")->required();
  classify->add_option("--library", library_path, "Material library CSV");
  classify->add_option("--spring-constant", spring_constant, "Probe spring constant, N/mm");

  auto* repro = app.add_subcommand("reproduce", "Regenerate a bench table or figure");
  repro->fallthrough();
  std::string target;
  repro->add_option("target", target, "table1, table2, table3, fig7, fig9, fig10 or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*simulate) return cmd_simulate(g, out);
    if (*calibrate) return cmd_calibrate(g, kind, cal_input, out, err);
    if (*classify) return cmd_classify(g, trace_input, library_path, spring_constant, out);
    return cmd_reproduce(g, target, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error (io): " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lvdt
