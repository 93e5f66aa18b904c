#pragma once

// Scenario configuration and the `simulate` pipeline.
//
// A scenario file is flat `key = value` text, one setting per line, with
// dotted section prefixes:
//
//   # comment
//   geometry.core_length_mm = 20
//   excitation.frequency_hz = 1000
//   specimen.name = paraffin gel
//
// Sections: geometry, excitation, circuit, specimen, protocol, signal. Every
// key is optional and falls back to Scenario::defaults(); the specimen section
// exists once any specimen.* key is given, and then needs both specimen.name
// and specimen.youngs_modulus_mpa. docs/scenario_format.md lists every key.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvdt/contact.hpp"
#include "lvdt/probe_model.hpp"
#include "lvdt/signal_chain.hpp"

namespace lvdt {

struct Scenario {
  SensorGeometry geometry;
  ExcitationConfig excitation;
  CircuitParams circuit;
  std::optional<Specimen> specimen;
  IndentationProtocol protocol;
  SynthesisRequest signal;
  // Core position with the spring unloaded; the probe is tared there.
  double rest_position_mm = 0.0;
  bool seed_given = false;

  /// Bundled default: paraffin gel, 1 mm indentation in 100 steps, clean
  /// 20 ms capture at 100 kHz with the core 1 mm toward coil B.
  static Scenario defaults();

  /// Throws Error{validation} naming the offending key.
  void validate() const;
};

/// Throws Error{parse} with the line number and key for malformed lines,
/// unknown keys, duplicates and bad numbers; Error{validation} for a specimen
/// section missing its required keys.
Scenario parse_scenario(std::string_view text);

/// Inverse of parse_scenario for every key.
std::string scenario_to_text(const Scenario& scenario);

/// Runs synthesis, demodulation, force conversion, the coil-A sweep with its
/// sensitivity fit and, when a specimen is configured, the indentation trace
/// and its classification against the bundled material library. Writes one
/// CSV per stage into `out_dir` and returns the paths in write order.
/// Identical scenarios produce identical bytes.
std::vector<std::filesystem::path> run_scenario(const Scenario& scenario,
                                                const std::filesystem::path& out_dir);

}  // namespace lvdt
