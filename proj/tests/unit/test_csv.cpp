#include <doctest.h>

#include <filesystem>

#include "lvdt/csv.hpp"
#include "lvdt/error.hpp"
#include "lvdt/reference_data.hpp"
#include "lvdt/synthetic.hpp"
#include "support.hpp"

using namespace lvdt;

TEST_CASE("numbers round trip in shortest form") {
  test::Gen gen(71);
  for (int i = 0; i < 2000; ++i) {
    const double v = gen.normal(1.0) * std::pow(10.0, gen.uniform(-12, 12));
    REQUIRE(csv::parse_number(csv::format_number(v), "v") == v);
  }
  CHECK(csv::format_number(1.3) == "1.3");
  CHECK(csv::format_number(0.0) == "0");
  CHECK_THROWS_AS(csv::parse_number("1,5", "v"), Error);
  CHECK_THROWS_AS(csv::parse_number("", "v"), Error);
}

TEST_CASE("document parsing") {
  const auto doc = csv::parse("# note\na,b\n1,\"x,y\"\n");
  CHECK(doc.comments == std::vector<std::string>{"note"});
  CHECK(doc.rows.at(0).at(1) == "x,y");
  CHECK(csv::serialize(doc) == "# note\na,b\n1,\"x,y\"\n");
  try {
    csv::parse("a,b\n1,2,3\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("emitted files re-serialize byte for byte") {
  SynthesisRequest r;
  r.core_position_mm = 0.7;
  r.noise_rms_v = 0.01;
  r.seed = 3;
  const SynthesizedSignals s = synthesize({}, {}, {}, r);
  const std::string wave = csv::waveform_to_csv(s.differential);
  const Waveform back = csv::waveform_from_csv(wave);
  CHECK(back.sample_rate_hz == s.differential.sample_rate_hz);
  CHECK(back.samples == s.differential.samples);
  CHECK(csv::waveform_to_csv(back) == wave);

  const MaterialLibrary lib = reference::materials_library();
  const IndentationTrace trace = synthetic::with_force_noise(
      simulate_indentation({}, reference::specimen_for(lib.entries[1], 0.45), {}), 0.01, 9);
  const std::string t = csv::trace_to_csv(trace);
  CHECK(csv::trace_to_csv(csv::trace_from_csv(t)) == t);
  CHECK(csv::trace_from_csv(t).specimen_name == "silicon rubber");

  const std::string lib_text = csv::library_to_csv(lib);
  CHECK(csv::library_to_csv(csv::library_from_csv(lib_text)) == lib_text);

  const std::string table = csv::table1_to_csv(reference::kCircuitRows);
  CHECK(csv::table1_to_csv(csv::table1_from_csv(table)) == table);

  const csv::Series series{"x", "y", {0, 0.2, 0.4}, {1, 2, 3}};
  CHECK(csv::series_to_csv(csv::series_from_csv(csv::series_to_csv(series))) ==
        csv::series_to_csv(series));
}

TEST_CASE("bundled data files match the built-in defaults") {
  const std::filesystem::path dir = LVDT_DATA_DIR;
  CHECK(csv::read_file(dir / "materials_table3.csv") == csv::library_to_csv(reference::materials_library()));
  const auto rows = csv::table1_from_csv(csv::read_file(dir / "table1_experimental.csv"));
  REQUIRE(rows.size() == reference::kCircuitRows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].series_resistance_ohm == reference::kCircuitRows[i].series_resistance_ohm);
    CHECK(rows[i].excitation_v == reference::kCircuitRows[i].excitation_v);
    CHECK(rows[i].measured_output_v == reference::kCircuitRows[i].measured_output_v);
  }
}

TEST_CASE("atomic write leaves no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path() / "lvdt_csv_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  csv::write_file_atomic(dir / "a.csv", "x\n1\n");
  csv::write_file_atomic(dir / "a.csv", "x\n2\n");
  CHECK(csv::read_file(dir / "a.csv") == "x\n2\n");
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  CHECK_THROWS_AS(csv::read_file(dir / "missing.csv"), Error);
  std::filesystem::remove_all(dir);
}
