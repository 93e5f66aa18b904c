#include "lvdt/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "lvdt/error.hpp"

namespace lvdt::csv {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) parse_error(line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::optional<std::string> metadata(const Document& doc, std::string_view key) {
  for (const std::string& c : doc.comments) {
    const auto eq = c.find('=');
    if (eq != std::string::npos && std::string_view(c).substr(0, eq) == key) {
      return c.substr(eq + 1);
    }
  }
  return std::nullopt;
}

void require_columns(const Document& doc, std::size_t count, std::string_view what) {
  if (doc.header.size() != count) {
    throw Error(ErrorCode::parse, std::string(what) + ": expected " + std::to_string(count) +
                                      " columns, header has " + std::to_string(doc.header.size()));
  }
}

// Header is line 1 plus the comments above it.
std::size_t row_line(const Document& doc, std::size_t row) { return doc.comments.size() + 2 + row; }

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      if (have_header) parse_error(line_no, "comment lines must precede the header");
      doc.comments.emplace_back(line);
      continue;
    }
    auto fields = split_fields(line, line_no);
    if (!have_header) {
      doc.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != doc.header.size()) {
      parse_error(line_no, "expected " + std::to_string(doc.header.size()) + " fields, found " +
                               std::to_string(fields.size()));
    }
    doc.rows.push_back(std::move(fields));
  }
  if (!have_header) throw Error(ErrorCode::parse, "missing header row");
  return doc;
}

std::string serialize(const Document& doc) {
  std::string out;
  for (const std::string& c : doc.comments) out += "# " + c + "\n";
  auto append_row = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out.push_back(',');
      out += quote_if_needed(fields[i]);
    }
    out.push_back('\n');
  };
  append_row(doc.header);
  for (const auto& row : doc.rows) append_row(row);
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::io, "cannot format number");
  return std::string(buf, ptr);
}

double parse_number(std::string_view field, std::string_view context) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::parse,
                std::string(context) + ": '" + std::string(field) + "' is not a number");
  }
  return value;
}

std::string series_to_csv(const Series& series) {
  if (series.x.size() != series.y.size()) {
    throw Error(ErrorCode::shape_mismatch, "series columns differ in length");
  }
  Document doc;
  doc.header = {series.x_name, series.y_name};
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    doc.rows.push_back({format_number(series.x[i]), format_number(series.y[i])});
  }
  return serialize(doc);
}

Series series_from_csv(std::string_view text) {
  const Document doc = parse(text);
  require_columns(doc, 2, "two-column CSV");
  Series s;
  s.x_name = doc.header[0];
  s.y_name = doc.header[1];
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const std::string ctx = "line " + std::to_string(row_line(doc, i));
    s.x.push_back(parse_number(doc.rows[i][0], ctx));
    s.y.push_back(parse_number(doc.rows[i][1], ctx));
  }
  return s;
}

std::string waveform_to_csv(const Waveform& waveform) {
  waveform.validate();
  Series s{"time_s", "volts", {}, waveform.samples};
  s.x.reserve(waveform.samples.size());
  for (std::size_t i = 0; i < waveform.samples.size(); ++i) s.x.push_back(waveform.time_at(i));
  return series_to_csv(s);
}

Waveform waveform_from_csv(std::string_view text) {
  Series s = series_from_csv(text);
  if (s.x.size() < 2) throw Error(ErrorCode::parse, "waveform needs at least two samples");
  const double span = s.x.back() - s.x.front();
  if (s.x.front() != 0.0 || !(span > 0.0)) {
    throw Error(ErrorCode::parse, "waveform time column must start at 0 and increase");
  }
  double rate = static_cast<double>(s.x.size() - 1) / span;
  if (const double rounded = std::round(rate); std::abs(rate - rounded) <= 1e-9 * rate) {
    rate = rounded;
  }
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double expected = static_cast<double>(i) / rate;
    if (std::abs(s.x[i] - expected) > 1e-9 * (span / static_cast<double>(s.x.size()))) {
      throw Error(ErrorCode::parse, "waveform sampling is not uniform at line " +
                                        std::to_string(i + 2));
    }
  }
  return Waveform{rate, std::move(s.y)};
}

std::string trace_to_csv(const IndentationTrace& trace) {
  Document doc;
  doc.comments.push_back("specimen=" + trace.specimen_name);
  doc.header = {"displacement_mm", "force_n"};
  for (const IndentationSample& s : trace.samples) {
    doc.rows.push_back({format_number(s.displacement_mm), format_number(s.force_n)});
  }
  return serialize(doc);
}

IndentationTrace trace_from_csv(std::string_view text) {
  const Document doc = parse(text);
  require_columns(doc, 2, "indentation trace");
  IndentationTrace trace;
  trace.specimen_name = metadata(doc, "specimen").value_or("");
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const std::string ctx = "line " + std::to_string(row_line(doc, i));
    trace.samples.push_back(
        {parse_number(doc.rows[i][0], ctx), parse_number(doc.rows[i][1], ctx)});
  }
  if (!trace.samples.empty()) {
    trace.protocol.max_stage_displacement_mm = trace.samples.back().displacement_mm;
    trace.protocol.n_steps = static_cast<int>(trace.samples.size());
  }
  return trace;
}

std::string table1_to_csv(std::span<const Table1Row> rows) {
  Document doc;
  doc.header = {"resistance_ohm", "excitation_v", "output_v"};
  for (const Table1Row& r : rows) {
    doc.rows.push_back({format_number(r.series_resistance_ohm), format_number(r.excitation_v),
                        format_number(r.measured_output_v)});
  }
  return serialize(doc);
}

std::vector<Table1Row> table1_from_csv(std::string_view text) {
  const Document doc = parse(text);
  require_columns(doc, 3, "circuit table");
  std::vector<Table1Row> rows;
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const std::string ctx = "line " + std::to_string(row_line(doc, i));
    rows.push_back({parse_number(doc.rows[i][0], ctx), parse_number(doc.rows[i][1], ctx),
                    parse_number(doc.rows[i][2], ctx)});
  }
  return rows;
}

std::string library_to_csv(const MaterialLibrary& library) {
  Document doc;
  doc.comments.push_back("poisson_ratio=" + format_number(library.poisson_ratio));
  doc.comments.push_back("tip_radius_mm=" + format_number(library.tip_radius_mm));
  doc.header = {"name", "youngs_modulus_mpa"};
  for (const Material& m : library.entries) {
    doc.rows.push_back({m.name, format_number(m.youngs_modulus_mpa)});
  }
  return serialize(doc);
}

MaterialLibrary library_from_csv(std::string_view text) {
  const Document doc = parse(text);
  require_columns(doc, 2, "material library");
  MaterialLibrary library;
  if (auto nu = metadata(doc, "poisson_ratio")) {
    library.poisson_ratio = parse_number(*nu, "poisson_ratio");
  }
  if (auto a = metadata(doc, "tip_radius_mm")) {
    library.tip_radius_mm = parse_number(*a, "tip_radius_mm");
  }
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const std::string ctx = "line " + std::to_string(row_line(doc, i));
    library.entries.push_back({doc.rows[i][0], parse_number(doc.rows[i][1], ctx)});
  }
  return library;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::io, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io, "cannot rename onto '" + path.string() + "': " + ec.message());
}

}  // namespace lvdt::csv
