#include <doctest.h>

#include <cmath>

#include "lvdt/error.hpp"
#include "lvdt/probe_model.hpp"
#include "support.hpp"

using namespace lvdt;

TEST_CASE("overlap length examples") {
  CHECK(overlap_length(-10, 10, -12, -2) == doctest::Approx(8.0));
  CHECK(overlap_length(-10, 10, 20, 30) == 0.0);
  CHECK(overlap_length(-8, 12, -12, -2) == doctest::Approx(6.0));
  CHECK_THROWS_AS(overlap_length(1, 1, 0, 2), Error);
}

TEST_CASE("overlap length matches a 1 um membership count") {
  // Count grid points under both intervals.
  long count = 0;
  for (long i = -20000; i <= 20000; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * 1e-3;
    if (x >= -8 && x <= 12 && x >= -12 && x <= -2) ++count;
  }
  CHECK(std::abs(static_cast<double>(count) * 1e-3 - overlap_length(-8, 12, -12, -2)) <= 1e-3);
}

TEST_CASE("coupling fraction examples") {
  const SensorGeometry g;
  CHECK(coupling_fraction(g, Coil::a, 0.0) == doctest::Approx(0.8));
  CHECK(coupling_fraction(g, Coil::b, 0.0) == doctest::Approx(0.8));
  CHECK(coupling_fraction(g, Coil::a, 2.0) == doctest::Approx(0.6));
  CHECK(coupling_fraction(g, Coil::b, 2.0) == doctest::Approx(1.0));
  CHECK(coupling_fraction(g, Coil::a, -30.0) == 0.0);
}

TEST_CASE("slice oracle examples") {
  const SensorGeometry g;
  CHECK(std::abs(coupling_oracle(g, Coil::a, 0.0, 10000) - 0.8) <= 1e-4);
  CHECK(std::abs(coupling_oracle(g, Coil::a, 2.0, 10000) - 0.6) <= 1e-4);
  for (std::size_t n : {1u, 7u, 100u, 12345u}) {
    CHECK(coupling_oracle(g, Coil::a, -7.0, n) == 1.0);
  }
  CHECK_THROWS_AS(coupling_oracle(g, Coil::a, 0.0, 0), Error);
}

TEST_CASE("property: coupling fraction agrees with slice oracle within 1/n") {
  const SensorGeometry g;
  test::Gen gen(11);
  for (int i = 0; i < 1000; ++i) {
    const double p = gen.uniform(-25.0, 25.0);
    const std::size_t n = gen.size(1, 2000);
    for (Coil c : {Coil::a, Coil::b}) {
      const double diff = std::abs(coupling_fraction(g, c, p) - coupling_oracle(g, c, p, n));
      REQUIRE(diff <= 1.0 / static_cast<double>(n) + 1e-12);
    }
  }
}

TEST_CASE("primary current") {
  ExcitationConfig e;
  CircuitParams c;
  e.amplitude_v = 10;
  e.series_resistance_ohm = 0;
  c.primary_resistance_ohm = 1;
  c.primary_reactance_ohm = 0;
  CHECK(primary_current_amplitude(e, c) == doctest::Approx(10.0));

  const ExcitationConfig defaults;
  const CircuitParams circuit;
  CHECK(primary_current_amplitude(defaults, circuit) == doctest::Approx(1.5313648379753144).epsilon(1e-12));

  ExcitationConfig doubled = defaults;
  doubled.amplitude_v *= 2;
  CHECK(primary_current_amplitude(doubled, circuit) ==
        doctest::Approx(2 * primary_current_amplitude(defaults, circuit)).epsilon(1e-15));

  ExcitationConfig open = defaults;
  open.series_resistance_ohm = 0;
  CircuitParams zero;
  zero.primary_reactance_ohm = 0;
  CHECK_THROWS_AS(primary_current_amplitude(open, zero), Error);
}

TEST_CASE("secondary amplitudes") {
  const SensorGeometry g;
  const ExcitationConfig e;
  const CircuitParams c;
  const VoltagePair centre = secondary_amplitudes(g, e, c, 0.0);
  CHECK(centre.v_a == centre.v_b);
  CHECK(secondary_amplitudes(g, e, c, 25.0).v_a == 0.0);
  const VoltagePair off = secondary_amplitudes(g, e, c, 2.0);
  CHECK(off.v_a / off.v_b == doctest::Approx(0.6));
  CHECK(off.v_a / off.v_b ==
        doctest::Approx(coupling_oracle(g, Coil::a, 2.0, 10000) / coupling_oracle(g, Coil::b, 2.0, 10000))
            .epsilon(1e-3));
}

TEST_CASE("differential output sign") {
  CHECK(differential_output({5.0, 5.0}) == 0.0);
  CHECK(differential_output({6.0, 4.0}) == 2.0);
  CHECK(differential_output({4.0, 6.0}) == -2.0);
  const SensorGeometry g;
  CHECK(differential_at(g, {}, {}, -1.0) > 0.0);
}

TEST_CASE("linear band and sensitivity of the default layout") {
  const SensorGeometry g;
  CHECK(linear_half_range(g) == doctest::Approx(2.0));
  CHECK(differential_sensitivity(g, {}, {}) == doctest::Approx(-1.9243698099795887).epsilon(1e-12));
}

TEST_CASE("property: antisymmetry about the centre") {
  const SensorGeometry g;
  test::Gen gen(12);
  for (int i = 0; i < 500; ++i) {
    const double d = gen.uniform(0.0, 30.0);
    const double plus = differential_at(g, {}, {}, g.center_mm() + d);
    const double minus = differential_at(g, {}, {}, g.center_mm() - d);
    REQUIRE(std::abs(plus + minus) <= 1e-12 * std::max(1.0, std::abs(plus)));
  }
}

TEST_CASE("property: differential strictly monotone while both coils are partly covered") {
  const SensorGeometry g;
  const double h = linear_half_range(g);
  test::Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    double x1 = gen.uniform(-h, h);
    double x2 = gen.uniform(-h, h);
    if (x1 == x2) continue;
    if (x1 > x2) std::swap(x1, x2);
    REQUIRE(differential_at(g, {}, {}, x1) > differential_at(g, {}, {}, x2));
  }
}

TEST_CASE("property: plateau while covered, linear once the edge enters") {
  const SensorGeometry g;
  const double edge = g.coil_a.start_mm + 0.5 * g.core_length_mm;
  const double v0 = secondary_amplitudes(g, {}, {}, -12.0).v_a;
  test::Gen gen(14);
  for (int i = 0; i < 200; ++i) {
    REQUIRE(secondary_amplitudes(g, {}, {}, gen.uniform(-12.0, edge)).v_a == v0);
  }
  // Second differences vanish on the ramp.
  for (int i = 0; i < 200; ++i) {
    const double x = gen.uniform(edge + 0.5, edge + 9.5);
    const double a = secondary_amplitudes(g, {}, {}, x - 0.25).v_a;
    const double b = secondary_amplitudes(g, {}, {}, x).v_a;
    const double c = secondary_amplitudes(g, {}, {}, x + 0.25).v_a;
    REQUIRE(std::abs(a - 2 * b + c) <= 1e-12 * v0);
  }
}

TEST_CASE("property: amplitudes fall with series resistance and scale with excitation") {
  const SensorGeometry g;
  test::Gen gen(15);
  for (int i = 0; i < 200; ++i) {
    const double p = gen.uniform(-8.0, 8.0);
    ExcitationConfig lo;
    lo.series_resistance_ohm = gen.uniform(0.0, 50.0);
    ExcitationConfig hi = lo;
    hi.series_resistance_ohm += gen.uniform(0.1, 10.0);
    const VoltagePair a = secondary_amplitudes(g, lo, {}, p);
    const VoltagePair b = secondary_amplitudes(g, hi, {}, p);
    REQUIRE(b.v_a < a.v_a);
    REQUIRE(b.v_b < a.v_b);

    const double s = gen.uniform(0.1, 10.0);
    ExcitationConfig scaled = lo;
    scaled.amplitude_v *= s;
    const VoltagePair c = secondary_amplitudes(g, scaled, {}, p);
    REQUIRE(test::rel_diff(c.v_a, s * a.v_a) <= 1e-14);
    REQUIRE(test::rel_diff(c.v_b, s * a.v_b) <= 1e-14);
  }
}

TEST_CASE("geometry validation") {
  SensorGeometry g;
  g.coil_b = {-5.0, 0.0};
  CHECK_THROWS_AS(g.validate(), Error);
  g = {};
  g.core_length_mm = 0;
  CHECK_THROWS_AS(g.validate(), Error);
  g = {};
  g.spring_constant_n_per_mm = -1;
  CHECK_THROWS_AS(g.validate(), Error);
}
