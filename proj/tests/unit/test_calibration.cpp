#include <doctest.h>

#include <cmath>
#include <vector>

#include "lvdt/calibration.hpp"
#include "lvdt/error.hpp"
#include "lvdt/reference_data.hpp"
#include "support.hpp"

using namespace lvdt;

namespace {

struct NormalEquations {
  double slope;
  double intercept;
};

// Closed-form solution of the 2x2 normal equations in extended precision.
NormalEquations normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double n = static_cast<long double>(x.size());
  const long double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {static_cast<double>(b), static_cast<double>((sy - b * sx) / n)};
}

}  // namespace

TEST_CASE("fit_line examples") {
  const std::vector<double> x{0, 1, 2};
  const LineFit a = fit_line(x, std::vector<double>{0, 1.3, 2.6});
  CHECK(a.slope == doctest::Approx(1.3));
  CHECK(std::abs(a.intercept) <= 1e-15);
  CHECK(a.r_squared == doctest::Approx(1.0));

  const LineFit flat = fit_line(x, std::vector<double>{5, 5, 5});
  CHECK(flat.slope == 0.0);
  CHECK(flat.intercept == doctest::Approx(5.0));

  test::Gen gen(41);
  std::vector<double> xs(100), ys(100);
  for (int i = 0; i < 100; ++i) {
    xs[i] = i * 0.1;
    ys[i] = 2 * xs[i] + 1 + gen.normal(0.01);
  }
  const LineFit noisy = fit_line(xs, ys);
  CHECK(std::abs(noisy.slope - 2.0) <= 0.01);
  CHECK(test::rel_diff(noisy.slope, normal_equations(xs, ys).slope) <= 1e-10);

  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("property: fit_line matches the normal equations to 1e-10") {
  test::Gen gen(42);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = gen.size(3, 400);
    const double slope = gen.uniform(-10, 10);
    const double intercept = gen.uniform(-10, 10);
    std::vector<double> x = gen.vector(n, -5, 5);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = slope * x[i] + intercept + gen.normal(0.5);
    const LineFit fit = fit_line(x, y);
    const NormalEquations ne = normal_equations(x, y);
    REQUIRE(std::abs(fit.slope - ne.slope) <= 1e-10 * std::max(1.0, std::abs(ne.slope)));
    REQUIRE(std::abs(fit.intercept - ne.intercept) <= 1e-10 * std::max(1.0, std::abs(ne.intercept)));
  }
}

TEST_CASE("property: fit_line equivariance") {
  test::Gen gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.size(3, 100);
    std::vector<double> x = gen.vector(n, -5, 5);
    std::vector<double> y = gen.vector(n, -5, 5);
    const LineFit base = fit_line(x, y);
    const double c = gen.uniform(0.1, 10);
    const double shift = gen.uniform(-10, 10);
    std::vector<double> yc = y;
    for (double& v : yc) v *= c;
    std::vector<double> xs = x;
    for (double& v : xs) v += shift;
    const LineFit scaled = fit_line(x, yc);
    REQUIRE(std::abs(scaled.slope - c * base.slope) <= 1e-10 * std::max(1.0, std::abs(c * base.slope)));
    REQUIRE(std::abs(scaled.intercept - c * base.intercept) <=
            1e-10 * std::max(1.0, std::abs(c * base.intercept)));
    REQUIRE(std::abs(fit_line(xs, y).slope - base.slope) <= 1e-10 * std::max(1.0, std::abs(base.slope)));
  }
}

TEST_CASE("spring calibration") {
  const std::vector<double> x{0, 1, 2, 3};
  CHECK(calibrate_spring(x, std::vector<double>{0, 2, 4, 6}).spring_constant_n_per_mm == 2.0);
  try {
    calibrate_spring(x, std::vector<double>{6, 4, 2, 0});
    FAIL("expected calibration failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::calibration_failure);
  }
  const SpringCalibration rough = calibrate_spring(x, std::vector<double>{0, 3, 1, 4});
  CHECK(rough.warning.has_value());
}

TEST_CASE("sensitivity calibration") {
  std::vector<double> x, line, flat;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i * 0.5);
    line.push_back(3.0 - 0.25 * x.back());
    flat.push_back(1.0);
  }
  const SensitivityCalibration cal = calibrate_sensitivity(x, line);
  CHECK(cal.sensitivity_v_per_mm == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(cal.linear_region.start_mm == 0.0);
  CHECK(cal.linear_region.end_mm == x.back());
  try {
    calibrate_sensitivity(x, flat);
    FAIL("expected flat response");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::flat_response);
  }
}

TEST_CASE("property: sensitivity recovered from coupling sweeps of random layouts") {
  test::Gen gen(44);
  for (int trial = 0; trial < 100; ++trial) {
    SensorGeometry g;
    const double coil = gen.uniform(5.0, 15.0);
    const double gap = gen.uniform(1.0, 6.0);
    g.coil_a = {-gap / 2 - coil, -gap / 2};
    g.coil_b = {gap / 2, gap / 2 + coil};
    g.core_length_mm = gen.uniform(coil + gap + 1.0, 2 * coil + gap - 1.0);
    const double edge = g.coil_a.start_mm + 0.5 * g.core_length_mm;
    const double start = edge - gen.uniform(1.0, 4.0);
    std::vector<double> x, v;
    for (int i = 0; start + 0.2 * i <= edge + 0.8 * coil; ++i) {
      x.push_back(start + 0.2 * i);
      v.push_back(secondary_amplitudes(g, {}, {}, x.back()).v_a);
    }
    const SensitivityCalibration cal = calibrate_sensitivity(x, v);
    const double truth = secondary_amplitudes(g, {}, {}, g.coil_a.start_mm - 100).v_a;  // 0
    const double full = secondary_amplitudes(g, {}, {}, edge).v_a;
    REQUIRE(truth == 0.0);
    REQUIRE(test::rel_diff(cal.sensitivity_v_per_mm, full / coil) <= 1e-6);
    REQUIRE(std::abs(cal.linear_region.start_mm - edge) <= 0.2 + 1e-9);
    REQUIRE(cal.fit.r_squared >= 0.999);
  }
}

TEST_CASE("circuit fit reproduces the bench rows within 5%") {
  const CircuitFit fit = fit_circuit_params(reference::kCircuitRows);
  CHECK(fit.max_abs_residual <= 0.05);
  CHECK(fit.params.primary_resistance_ohm >= 0.0);
  CHECK(fit.params.primary_reactance_ohm >= 0.0);
}

TEST_CASE("circuit fit dominates a 50^3 feasible grid") {
  const CircuitFit fit = fit_circuit_params(reference::kCircuitRows);
  const double box = 4 * 18.6;
  double best = INFINITY;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      for (int k = 0; k < 50; ++k) {
        CircuitParams p;
        p.gain = 20.0 * (i + 1) / 50;
        p.primary_resistance_ohm = box * j / 49;
        p.primary_reactance_ohm = box * k / 49;
        best = std::min(best, circuit_objective(p, reference::kCircuitRows));
      }
    }
  }
  CHECK(fit.objective <= best);
  CHECK(fit.objective == doctest::Approx(circuit_objective(fit.params, reference::kCircuitRows)));
}

TEST_CASE("property: circuit fit recovers generating parameters within 0.1%") {
  test::Gen gen(45);
  for (int trial = 0; trial < 20; ++trial) {
    CircuitParams truth;
    truth.gain = gen.uniform(1.0, 10.0);
    truth.primary_resistance_ohm = gen.uniform(0.5, 10.0);
    truth.primary_reactance_ohm = gen.uniform(0.5, 10.0);
    std::vector<Table1Row> rows;
    for (double r : {2.0, 7.0, 15.0, 30.0}) {
      const double v = gen.uniform(5.0, 20.0);
      rows.push_back({r, v, circuit_output(truth, r, v)});
    }
    const CircuitFit fit = fit_circuit_params(rows);
    REQUIRE(test::rel_diff(fit.params.gain, truth.gain) <= 1e-3);
    REQUIRE(test::rel_diff(fit.params.primary_resistance_ohm, truth.primary_resistance_ohm) <= 1e-3);
    REQUIRE(test::rel_diff(fit.params.primary_reactance_ohm, truth.primary_reactance_ohm) <= 1e-3);
  }
}

TEST_CASE("circuit fit needs three distinct resistances") {
  const std::vector<Table1Row> same{{6.2, 10, 11}, {6.2, 14, 8}, {6.2, 16, 6}};
  try {
    fit_circuit_params(same);
    FAIL("expected underdetermined");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::underdetermined);
  }
}
