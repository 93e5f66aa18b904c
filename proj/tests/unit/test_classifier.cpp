#include <doctest.h>

#include <cmath>

#include "lvdt/classifier.hpp"
#include "lvdt/error.hpp"
#include "lvdt/reference_data.hpp"
#include "lvdt/synthetic.hpp"
#include "support.hpp"

using namespace lvdt;

namespace {

IndentationTrace line_trace(double slope, int n = 100) {
  IndentationTrace t;
  for (int i = 0; i < n; ++i) {
    const double d = (i + 1) * 0.01;
    t.samples.push_back({d, slope * d});
  }
  return t;
}

IndentationTrace simulated(const Material& m) {
  const MaterialLibrary lib = reference::materials_library();
  return simulate_indentation({}, reference::specimen_for(m, lib.poisson_ratio), {});
}

}  // namespace

TEST_CASE("contact stiffness estimate") {
  CHECK(estimate_contact_stiffness(line_trace(1.047)) == doctest::Approx(1.047).epsilon(1e-14));
  try {
    estimate_contact_stiffness(line_trace(0.0));
    FAIL("expected non-contact");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_contact);
  }
  IndentationTrace backwards = line_trace(1.0);
  std::swap(backwards.samples[3], backwards.samples[4]);
  CHECK_THROWS_AS(estimate_contact_stiffness(backwards), Error);

  const auto pu = simulated(reference::materials_library().entries[2]);
  const double slope = estimate_contact_stiffness(pu);
  CHECK(slope == doctest::Approx(1.2993854298155287).epsilon(1e-12));
  CHECK(slope < 1.3);
}

TEST_CASE("specimen stiffness inversion") {
  CHECK(infer_specimen_stiffness(0.65, 1.3) == doctest::Approx(1.3));
  const double keff = series_stiffness(1.3, 3.86);
  CHECK(std::abs(infer_specimen_stiffness(keff, 1.3) - 3.86) <= 1e-9);
  try {
    infer_specimen_stiffness(1.3, 1.3);
    FAIL("expected saturation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::saturated_measurement);
  }
}

TEST_CASE("property: saturated slopes are refused") {
  test::Gen gen(51);
  for (int i = 0; i < 200; ++i) {
    const double k = gen.uniform(0.5, 5.0);
    const double keff = k * (1 - gen.uniform(0.0, kSaturationTolerance));
    REQUIRE_THROWS_AS(infer_specimen_stiffness(keff, k), Error);
  }
  const auto pu = simulated(reference::materials_library().entries[2]);
  const ClassificationResult r = classify(pu, reference::materials_library(), 1.3);
  CHECK(r.label == "polyurethane");
  CHECK_FALSE(r.estimated_specimen_stiffness_n_per_mm.has_value());
}

TEST_CASE("classification of the bundled materials") {
  const MaterialLibrary lib = reference::materials_library();
  for (const Material& m : lib.entries) {
    const ClassificationResult r = classify(simulated(m), lib, 1.3);
    CHECK(r.label == m.name);
    CHECK(r.log_distance_margin > 0.0);
  }
}

TEST_CASE("ties go to the first candidate with zero margin") {
  const std::vector<SlopeCandidate> c{{"first", 1.0}, {"second", 4.0}};
  const ClassificationResult r = classify_slope(2.0, c);
  CHECK(r.label == "first");
  CHECK(r.log_distance_margin == 0.0);
  const std::vector<SlopeCandidate> swapped{{"second", 4.0}, {"first", 1.0}};
  CHECK(classify_slope(2.0, swapped).label == "second");
}

TEST_CASE("property: label invariant under common scaling of forces and candidates") {
  const MaterialLibrary lib = reference::materials_library();
  const auto base = expected_slopes(lib, 1.3);
  test::Gen gen(52);
  for (int i = 0; i < 300; ++i) {
    const double slope = std::exp(gen.uniform(-1.0, 1.0));
    const double c = std::exp(gen.uniform(-5.0, 5.0));
    IndentationTrace t = line_trace(slope, 20);
    const std::string label = classify_slope(estimate_contact_stiffness(t), base).label;
    for (auto& s : t.samples) s.force_n *= c;
    auto scaled = base;
    for (auto& cand : scaled) cand.expected_slope_n_per_mm *= c;
    REQUIRE(classify_slope(estimate_contact_stiffness(t), scaled).label == label);
  }
}

TEST_CASE("property: 1% force noise on 100-point traces classifies >= 99/100") {
  const MaterialLibrary lib = reference::materials_library();
  const auto candidates = expected_slopes(lib, 1.3);
  for (std::size_t m = 0; m < lib.entries.size(); ++m) {
    const IndentationTrace clean = simulated(lib.entries[m]);
    int correct = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const IndentationTrace noisy = synthetic::with_force_noise(clean, 0.01, 500 + seed);
      correct += classify_slope(estimate_contact_stiffness(noisy), candidates).label == lib.entries[m].name;
    }
    CHECK(correct >= 99);
  }
}

TEST_CASE("library validation") {
  MaterialLibrary lib;
  lib.entries = {{"only", 1.0}};
  CHECK_THROWS_AS(lib.validate(), Error);
  lib.entries = {{"a", 1.0}, {"a", 2.0}};
  CHECK_THROWS_AS(lib.validate(), Error);
  lib.entries = {{"a", 1.0}, {"b", -2.0}};
  CHECK_THROWS_AS(lib.validate(), Error);
}
