#pragma once

// CSV files exchanged by the toolkit: comma separated, header row, '.'
// decimal point, LF line endings. Lines starting with '#' are comments and
// may carry `key=value` metadata. Numbers are written in shortest round-trip
// form, so parsing an emitted file and writing it again reproduces it byte
// for byte.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvdt/calibration.hpp"
#include "lvdt/classifier.hpp"
#include "lvdt/contact.hpp"
#include "lvdt/signal_chain.hpp"

namespace lvdt::csv {

struct Document {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Throws Error{parse} naming the offending line.
Document parse(std::string_view text);
std::string serialize(const Document& doc);

std::string format_number(double value);
double parse_number(std::string_view field, std::string_view context);

struct Series {
  std::string x_name;
  std::string y_name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string series_to_csv(const Series& series);
/// Any two numeric columns under a header row.
Series series_from_csv(std::string_view text);

/// Columns time_s, volts. The sample rate is recovered from the time column
/// and snapped to an integer when it is one to within 1e-9.
std::string waveform_to_csv(const Waveform& waveform);
Waveform waveform_from_csv(std::string_view text);

/// `# specimen=<name>`, then columns displacement_mm, force_n.
std::string trace_to_csv(const IndentationTrace& trace);
IndentationTrace trace_from_csv(std::string_view text);

/// Columns resistance_ohm, excitation_v, output_v.
std::string table1_to_csv(std::span<const Table1Row> rows);
std::vector<Table1Row> table1_from_csv(std::string_view text);

/// Columns name, youngs_modulus_mpa. Poisson ratio and tip radius are kept
/// as `# poisson_ratio=` and `# tip_radius_mm=` comments when present.
std::string library_to_csv(const MaterialLibrary& library);
MaterialLibrary library_from_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace lvdt::csv
