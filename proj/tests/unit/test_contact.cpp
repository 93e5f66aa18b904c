#include <doctest.h>

#include <cmath>
#include <limits>

#include "lvdt/calibration.hpp"
#include "lvdt/contact.hpp"
#include "lvdt/error.hpp"
#include "support.hpp"

using namespace lvdt;

namespace {

Specimen specimen(double e) {
  Specimen s;
  s.name = "block";
  s.youngs_modulus_mpa = e;
  return s;
}

}  // namespace

TEST_CASE("punch stiffness") {
  CHECK(punch_stiffness(specimen(0.77), 2.0) == doctest::Approx(3.8620689655172415).epsilon(1e-12));
  CHECK(punch_stiffness(specimen(1.07), 2.0) == doctest::Approx(5.366771159874609).epsilon(1e-12));
  CHECK(punch_stiffness(specimen(0.77), 4.0) == doctest::Approx(2 * punch_stiffness(specimen(0.77), 2.0)));
  Specimen rubbery = specimen(1.0);
  rubbery.poisson_ratio = 0.5;
  try {
    punch_stiffness(rubbery, 2.0);
    FAIL("expected incompressible limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::incompressible_limit);
  }
}

TEST_CASE("tip size warning") {
  CHECK_FALSE(tip_size_warning(specimen(1.0), 2.0).has_value());
  CHECK(tip_size_warning(specimen(1.0), 5.0).has_value());
}

TEST_CASE("series equilibrium examples") {
  const SeriesState even = series_equilibrium(1.0, 1.0, 2.0);
  CHECK(even.spring_compression_mm == doctest::Approx(1.0));
  CHECK(even.indentation_mm == doctest::Approx(1.0));
  CHECK(even.force_n == doctest::Approx(1.0));

  const SeriesState rigid = series_equilibrium(1.3, std::numeric_limits<double>::infinity(), 2.0);
  CHECK(rigid.indentation_mm == 0.0);
  CHECK(rigid.force_n == doctest::Approx(2.6));
  const SeriesState stiff = series_equilibrium(1.3, 1e12, 2.0);
  CHECK(stiff.force_n == doctest::Approx(2.6).epsilon(1e-9));

  CHECK(series_equilibrium(1.3, 3.86, 1.0).force_n == doctest::Approx(0.973).epsilon(1e-3));
  CHECK_THROWS_AS(series_equilibrium(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(series_equilibrium(1.0, 1.0, -1.0), Error);
}

TEST_CASE("property: force balance and displacement partition to 1e-12") {
  test::Gen gen(31);
  for (int i = 0; i < 2000; ++i) {
    const double k1 = std::exp(gen.uniform(-5.0, 5.0));
    const double k2 = std::exp(gen.uniform(-5.0, 8.0));
    const double d = gen.uniform(0.0, 10.0);
    const SeriesState s = series_equilibrium(k1, k2, d);
    const double f = s.force_n;
    REQUIRE(std::abs(k1 * s.spring_compression_mm - f) <= 1e-12 * std::max(f, 1e-300));
    REQUIRE(std::abs(k2 * s.indentation_mm - f) <= 1e-12 * std::max(f, 1e-300));
    REQUIRE(std::abs(s.spring_compression_mm + s.indentation_mm - d) <= 1e-12 * std::max(d, 1e-300));
  }
}

TEST_CASE("indentation traces") {
  const SensorGeometry g;
  const IndentationProtocol p;
  const IndentationTrace gel = simulate_indentation(g, specimen(0.77), p);
  const IndentationTrace pu = simulate_indentation(g, specimen(548), p);
  REQUIRE(gel.samples.size() == 100);
  CHECK(pu.samples.back().force_n > gel.samples.back().force_n);
  CHECK(gel.samples.back().force_n / gel.samples.back().displacement_mm ==
        doctest::Approx(0.97).epsilon(0.005));

  IndentationProtocol tiny = p;
  tiny.max_stage_displacement_mm = 1e-6;
  for (const auto& s : simulate_indentation(g, specimen(0.77), tiny).samples) {
    CHECK(s.force_n <= 1.3e-6);
  }
  IndentationProtocol none = p;
  none.max_stage_displacement_mm = 0.0;
  CHECK_THROWS_AS(simulate_indentation(g, specimen(0.77), none), Error);
}

TEST_CASE("property: traces are lines through the origin, ordered and bounded by the spring") {
  const SensorGeometry g;
  const IndentationProtocol p;
  test::Gen gen(32);
  for (int i = 0; i < 100; ++i) {
    const double e1 = std::exp(gen.uniform(-3.0, 7.0));
    const double e2 = e1 * gen.uniform(1.01, 10.0);
    const IndentationTrace t1 = simulate_indentation(g, specimen(e1), p);
    const IndentationTrace t2 = simulate_indentation(g, specimen(e2), p);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& s : t1.samples) {
      x.push_back(s.displacement_mm);
      y.push_back(s.force_n);
    }
    const LineFit fit = fit_line(x, y);
    REQUIRE(fit.r_squared >= 1.0 - 1e-12);
    REQUIRE(std::abs(fit.intercept) <= 1e-12);
    const double s1 = fit.slope;
    const double s2 = t2.samples.back().force_n / t2.samples.back().displacement_mm;
    REQUIRE(s1 < s2);
    REQUIRE(s2 < g.spring_constant_n_per_mm);
  }
  const double huge = simulate_indentation(g, specimen(1e9), p).samples.back().force_n;
  CHECK(huge == doctest::Approx(1.3).epsilon(1e-6));
}
