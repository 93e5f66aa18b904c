#include "lvdt/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "lvdt/calibration.hpp"
#include "lvdt/classifier.hpp"
#include "lvdt/csv.hpp"
#include "lvdt/error.hpp"
#include "lvdt/reference_data.hpp"

namespace lvdt {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Field {
  const char* key;
  std::function<void(Scenario&, const std::string& value, const std::string& ctx)> set;
  std::function<std::string(const Scenario&)> get;
};

double number(const std::string& value, const std::string& ctx) {
  return csv::parse_number(value, ctx);
}

long long integer(const std::string& value, const std::string& ctx) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw Error(ErrorCode::parse, ctx + ": '" + value + "' is not an integer");
  }
  return out;
}

Specimen& specimen_of(Scenario& s) {
  if (!s.specimen) s.specimen.emplace();
  return *s.specimen;
}

// Member-pointer helpers for the common double-valued keys.
template <typename Section>
Field double_field(const char* key, Section Scenario::*section, double Section::*member) {
  return {key,
          [=](Scenario& s, const std::string& v, const std::string& ctx) {
            s.*section.*member = number(v, ctx);
          },
          [=](const Scenario& s) { return csv::format_number(s.*section.*member); }};
}

Field specimen_field(const char* key, double Specimen::*member) {
  return {key,
          [=](Scenario& s, const std::string& v, const std::string& ctx) {
            specimen_of(s).*member = number(v, ctx);
          },
          [=](const Scenario& s) {
            return s.specimen ? csv::format_number((*s.specimen).*member) : std::string();
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    using G = SensorGeometry;
    using E = ExcitationConfig;
    using C = CircuitParams;
    using P = IndentationProtocol;
    using R = SynthesisRequest;
    std::vector<Field> f;
    f.push_back(double_field("geometry.core_length_mm", &Scenario::geometry, &G::core_length_mm));
    f.push_back({"geometry.coil_a_start_mm",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.geometry.coil_a.start_mm = number(v, c);
                 },
                 [](const Scenario& s) { return csv::format_number(s.geometry.coil_a.start_mm); }});
    f.push_back({"geometry.coil_a_end_mm",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.geometry.coil_a.end_mm = number(v, c);
                 },
                 [](const Scenario& s) { return csv::format_number(s.geometry.coil_a.end_mm); }});
    f.push_back({"geometry.coil_b_start_mm",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.geometry.coil_b.start_mm = number(v, c);
                 },
                 [](const Scenario& s) { return csv::format_number(s.geometry.coil_b.start_mm); }});
    f.push_back({"geometry.coil_b_end_mm",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.geometry.coil_b.end_mm = number(v, c);
                 },
                 [](const Scenario& s) { return csv::format_number(s.geometry.coil_b.end_mm); }});
    f.push_back({"geometry.turns_primary",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.geometry.turns_primary = static_cast<int>(integer(v, c));
                 },
                 [](const Scenario& s) { return std::to_string(s.geometry.turns_primary); }});
    f.push_back({"geometry.turns_secondary",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.geometry.turns_secondary = static_cast<int>(integer(v, c));
                 },
                 [](const Scenario& s) { return std::to_string(s.geometry.turns_secondary); }});
    f.push_back(double_field("geometry.coupling_gain", &Scenario::geometry, &G::coupling_gain));
    f.push_back(double_field("geometry.spring_constant_n_per_mm", &Scenario::geometry,
                             &G::spring_constant_n_per_mm));

    f.push_back(double_field("excitation.amplitude_v", &Scenario::excitation, &E::amplitude_v));
    f.push_back(double_field("excitation.frequency_hz", &Scenario::excitation, &E::frequency_hz));
    f.push_back(double_field("excitation.series_resistance_ohm", &Scenario::excitation,
                             &E::series_resistance_ohm));

    f.push_back(double_field("circuit.primary_resistance_ohm", &Scenario::circuit,
                             &C::primary_resistance_ohm));
    f.push_back(double_field("circuit.primary_reactance_ohm", &Scenario::circuit,
                             &C::primary_reactance_ohm));
    f.push_back(double_field("circuit.reference_frequency_hz", &Scenario::circuit,
                             &C::reference_frequency_hz));
    f.push_back(double_field("circuit.gain", &Scenario::circuit, &C::gain));

    f.push_back({"specimen.name",
                 [](Scenario& s, const std::string& v, const std::string&) {
                   specimen_of(s).name = v;
                 },
                 [](const Scenario& s) { return s.specimen ? s.specimen->name : std::string(); }});
    f.push_back(specimen_field("specimen.youngs_modulus_mpa", &Specimen::youngs_modulus_mpa));
    f.push_back(specimen_field("specimen.poisson_ratio", &Specimen::poisson_ratio));
    f.push_back(specimen_field("specimen.width_mm", &Specimen::width_mm));
    f.push_back(specimen_field("specimen.depth_mm", &Specimen::depth_mm));
    f.push_back(specimen_field("specimen.height_mm", &Specimen::height_mm));

    f.push_back(double_field("protocol.max_stage_displacement_mm", &Scenario::protocol,
                             &P::max_stage_displacement_mm));
    f.push_back({"protocol.n_steps",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.protocol.n_steps = static_cast<int>(integer(v, c));
                 },
                 [](const Scenario& s) { return std::to_string(s.protocol.n_steps); }});
    f.push_back(double_field("protocol.tip_radius_mm", &Scenario::protocol, &P::tip_radius_mm));

    f.push_back(double_field("signal.core_position_mm", &Scenario::signal, &R::core_position_mm));
    f.push_back({"signal.rest_position_mm",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   s.rest_position_mm = number(v, c);
                 },
                 [](const Scenario& s) { return csv::format_number(s.rest_position_mm); }});
    f.push_back(double_field("signal.sample_rate_hz", &Scenario::signal, &R::sample_rate_hz));
    f.push_back(double_field("signal.duration_s", &Scenario::signal, &R::duration_s));
    f.push_back(double_field("signal.noise_rms_v", &Scenario::signal, &R::noise_rms_v));
    f.push_back({"signal.seed",
                 [](Scenario& s, const std::string& v, const std::string& c) {
                   std::uint64_t seed = 0;
                   const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
                   if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
                     throw Error(ErrorCode::parse, c + ": '" + v + "' is not an unsigned integer");
                   }
                   s.signal.seed = seed;
                   s.seed_given = true;
                 },
                 [](const Scenario& s) { return std::to_string(s.signal.seed); }});
    return f;
  }();
  return table;
}

void require(bool ok, std::string_view key, std::string_view requirement) {
  if (!ok) throw Error(ErrorCode::validation, std::string(key) + " " + std::string(requirement));
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

Scenario Scenario::defaults() {
  Scenario s;
  const MaterialLibrary library = reference::materials_library();
  s.specimen = reference::specimen_for(library.entries.front(), library.poisson_ratio);
  s.protocol.max_stage_displacement_mm = reference::kIndentationDepth;
  s.protocol.n_steps = 100;
  s.protocol.tip_radius_mm = library.tip_radius_mm;
  s.signal.core_position_mm = 1.0;
  s.signal.sample_rate_hz = 100'000.0;
  s.signal.duration_s = 0.02;
  s.signal.noise_rms_v = 0.0;
  s.signal.seed = 1;
  s.seed_given = true;
  return s;
}

void Scenario::validate() const {
  const SensorGeometry& g = geometry;
  require(finite_positive(g.core_length_mm), "geometry.core_length_mm", "must be > 0");
  require(g.coil_a.end_mm > g.coil_a.start_mm, "geometry.coil_a_end_mm",
          "must exceed geometry.coil_a_start_mm");
  require(g.coil_b.end_mm > g.coil_b.start_mm, "geometry.coil_b_end_mm",
          "must exceed geometry.coil_b_start_mm");
  require(!(g.coil_a.end_mm > g.coil_b.start_mm && g.coil_b.end_mm > g.coil_a.start_mm),
          "geometry.coil_b_start_mm", "places coil B over coil A");
  require(g.turns_primary > 0, "geometry.turns_primary", "must be > 0");
  require(g.turns_secondary > 0, "geometry.turns_secondary", "must be > 0");
  require(finite_non_negative(g.coupling_gain), "geometry.coupling_gain", "must be >= 0");
  require(finite_positive(g.spring_constant_n_per_mm), "geometry.spring_constant_n_per_mm",
          "must be > 0");

  require(finite_positive(excitation.amplitude_v), "excitation.amplitude_v", "must be > 0");
  require(finite_positive(excitation.frequency_hz), "excitation.frequency_hz", "must be > 0");
  require(finite_non_negative(excitation.series_resistance_ohm),
          "excitation.series_resistance_ohm", "must be >= 0");

  require(finite_non_negative(circuit.primary_resistance_ohm), "circuit.primary_resistance_ohm",
          "must be >= 0");
  require(finite_non_negative(circuit.primary_reactance_ohm), "circuit.primary_reactance_ohm",
          "must be >= 0");
  require(finite_positive(circuit.reference_frequency_hz), "circuit.reference_frequency_hz",
          "must be > 0");
  require(finite_non_negative(circuit.gain), "circuit.gain", "must be >= 0");
  require(excitation.series_resistance_ohm + circuit.primary_resistance_ohm > 0.0 ||
              circuit.primary_reactance_ohm > 0.0,
          "circuit.primary_reactance_ohm", "leaves the primary circuit with zero impedance");

  if (specimen) {
    require(!specimen->name.empty(), "specimen.name", "is required");
    require(finite_positive(specimen->youngs_modulus_mpa), "specimen.youngs_modulus_mpa",
            "must be > 0");
    require(specimen->poisson_ratio >= 0.0 && specimen->poisson_ratio < 0.5,
            "specimen.poisson_ratio", "must be in [0, 0.5)");
    require(finite_positive(specimen->width_mm), "specimen.width_mm", "must be > 0");
    require(finite_positive(specimen->depth_mm), "specimen.depth_mm", "must be > 0");
    require(finite_positive(specimen->height_mm), "specimen.height_mm", "must be > 0");
  }

  require(finite_positive(protocol.max_stage_displacement_mm),
          "protocol.max_stage_displacement_mm", "must be > 0");
  require(protocol.n_steps >= 2, "protocol.n_steps", "must be >= 2");
  require(finite_positive(protocol.tip_radius_mm), "protocol.tip_radius_mm", "must be > 0");

  require(std::isfinite(signal.core_position_mm), "signal.core_position_mm", "must be finite");
  require(std::isfinite(rest_position_mm), "signal.rest_position_mm", "must be finite");
  require(finite_positive(signal.sample_rate_hz) &&
              signal.sample_rate_hz >= 10.0 * excitation.frequency_hz,
          "signal.sample_rate_hz", "must be at least 10x excitation.frequency_hz");
  require(finite_positive(signal.duration_s) &&
              signal.duration_s * excitation.frequency_hz >= 1.0 - 1e-9,
          "signal.duration_s", "must cover at least one excitation cycle");
  require(finite_non_negative(signal.noise_rms_v), "signal.noise_rms_v", "must be >= 0");
  require(signal.noise_rms_v == 0.0 || seed_given, "signal.seed",
          "is required when signal.noise_rms_v > 0");
}

Scenario parse_scenario(std::string_view text) {
  std::map<std::string, const Field*, std::less<>> by_key;
  for (const Field& f : fields()) by_key.emplace(f.key, &f);

  Scenario s = Scenario::defaults();
  s.specimen.reset();
  s.seed_given = false;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::parse, where + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = by_key.find(key);
    if (it == by_key.end()) throw Error(ErrorCode::parse, where + ": unknown field '" + key + "'");
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::parse, where + ": field '" + key + "' given twice");
    }
    it->second->set(s, value, where + ": field '" + key + "'");
  }

  if (s.specimen) {
    if (!seen.contains("specimen.name")) {
      throw Error(ErrorCode::validation, "specimen.name is required in a specimen section");
    }
    if (!seen.contains("specimen.youngs_modulus_mpa")) {
      throw Error(ErrorCode::validation,
                  "specimen.youngs_modulus_mpa is required in a specimen section");
    }
  }
  return s;
}

std::string scenario_to_text(const Scenario& scenario) {
  std::string out;
  for (const Field& f : fields()) {
    const bool is_specimen = std::string_view(f.key).starts_with("specimen.");
    if (is_specimen && !scenario.specimen) continue;
    if (std::string_view(f.key) == "signal.seed" && !scenario.seed_given) continue;
    out += f.key;
    out += " = ";
    out += f.get(scenario);
    out += '\n';
  }
  return out;
}

namespace {

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& items) {
  csv::Document doc;
  doc.header = {"quantity", "value"};
  for (const auto& [k, v] : items) doc.rows.push_back({k, v});
  return csv::serialize(doc);
}

}  // namespace

std::vector<std::filesystem::path> run_scenario(const Scenario& scenario,
                                                const std::filesystem::path& out_dir) {
  scenario.validate();
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = out_dir / name;
    csv::write_file_atomic(path, content);
    written.push_back(path);
  };
  using csv::format_number;

  emit("scenario.cfg", scenario_to_text(scenario));

  // Stage 1: waveforms.
  const SynthesizedSignals signals =
      synthesize(scenario.geometry, scenario.excitation, scenario.circuit, scenario.signal);
  emit("waveform_reference.csv", csv::waveform_to_csv(signals.reference));
  emit("waveform_differential.csv", csv::waveform_to_csv(signals.differential));

  // Stage 2: demodulation and force.
  const ProbeCalibration cal = ideal_calibration(scenario.geometry, scenario.excitation,
                                                 scenario.circuit, scenario.rest_position_mm);
  const ForceMeasurement m = measure_force(signals.differential, signals.reference, cal);
  const VoltagePair pair = secondary_amplitudes(scenario.geometry, scenario.excitation,
                                                scenario.circuit, scenario.signal.core_position_mm);
  emit("measurement.csv",
       key_value_csv({
           {"true_core_position_mm", format_number(scenario.signal.core_position_mm)},
           {"v_a", format_number(pair.v_a)},
           {"v_b", format_number(pair.v_b)},
           {"signed_amplitude_v", format_number(m.demod.signed_amplitude)},
           {"phase_offset_rad", format_number(m.demod.phase_offset_rad)},
           {"sensitivity_v_per_mm", format_number(cal.sensitivity_v_per_mm)},
           {"core_position_mm", format_number(m.core_position_mm)},
           {"displacement_mm", format_number(m.displacement_mm)},
           {"force_n", format_number(m.force_n)},
       }));

  // Stage 3: output function of each coil and the sensitivity fit on coil A.
  const SensorGeometry& g = scenario.geometry;
  const double reach = std::max({std::abs(g.coil_a.start_mm - g.center_mm()),
                                 std::abs(g.coil_b.end_mm - g.center_mm())}) +
                       0.5 * g.core_length_mm;
  constexpr double kStep = 0.2;
  const auto steps = static_cast<std::size_t>(std::floor(2.0 * reach / kStep + 1e-9));
  csv::Document sweep;
  sweep.header = {"core_position_mm", "v_a", "v_b", "differential_v"};
  std::vector<double> positions;
  std::vector<double> coil_a;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x = g.center_mm() - reach + kStep * static_cast<double>(i);
    const VoltagePair v = secondary_amplitudes(g, scenario.excitation, scenario.circuit, x);
    positions.push_back(x);
    coil_a.push_back(v.v_a);
    sweep.rows.push_back({format_number(x), format_number(v.v_a), format_number(v.v_b),
                          format_number(differential_output(v))});
  }
  emit("coupling_sweep.csv", csv::serialize(sweep));
  const SensitivityCalibration sens = calibrate_sensitivity(positions, coil_a);
  emit("sensitivity_fit.csv",
       key_value_csv({
           {"sensitivity_v_per_mm", format_number(sens.sensitivity_v_per_mm)},
           {"region_start_mm", format_number(sens.linear_region.start_mm)},
           {"region_end_mm", format_number(sens.linear_region.end_mm)},
           {"slope", format_number(sens.fit.slope)},
           {"intercept", format_number(sens.fit.intercept)},
           {"r_squared", format_number(sens.fit.r_squared)},
           {"n_points", std::to_string(sens.fit.n_points)},
       }));

  // Stage 4: indentation and classification.
  if (scenario.specimen) {
    const IndentationTrace trace = simulate_indentation(g, *scenario.specimen, scenario.protocol);
    emit("indentation.csv", csv::trace_to_csv(trace));
    const ClassificationResult result =
        classify(trace, reference::materials_library(), g.spring_constant_n_per_mm);
    emit("classification.csv",
         key_value_csv({
             {"specimen", scenario.specimen->name},
             {"label", result.label},
             {"trace_slope_n_per_mm", format_number(result.estimated_slope_n_per_mm)},
             {"specimen_stiffness_n_per_mm",
              result.estimated_specimen_stiffness_n_per_mm
                  ? format_number(*result.estimated_specimen_stiffness_n_per_mm)
                  : std::string("saturated")},
             {"log_distance_margin", format_number(result.log_distance_margin)},
         }));
  }
  return written;
}

}  // namespace lvdt
