#include "lvdt/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "lvdt/error.hpp"
#include "lvdt/kernels.hpp"

namespace lvdt {
namespace {

void require_paired(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::shape_mismatch, "x and y have different lengths");
  }
}

}  // namespace

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  require_paired(x, y);
  if (x.size() < 2) throw Error(ErrorCode::invalid_argument, "line fit needs at least two points");
  const bool distinct = std::any_of(x.begin(), x.end(), [&](double v) { return v != x.front(); });
  if (!distinct) throw Error(ErrorCode::degenerate_abscissa, "all x values are identical");

  const double n = static_cast<double>(x.size());
  const double mean_x = kernels::sum(x) / n;
  const double mean_y = kernels::sum(y) / n;
  const kernels::CenteredMoments m = kernels::centered_moments(x, y, mean_x, mean_y);

  LineFit fit;
  fit.n_points = x.size();
  fit.slope = m.sxy / m.sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (m.syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    fit.r_squared = std::clamp(m.sxy * m.sxy / (m.sxx * m.syy), 0.0, 1.0);
  }
  return fit;
}

SpringCalibration calibrate_spring(std::span<const double> elongation_mm,
                                   std::span<const double> force_n, double min_r_squared) {
  SpringCalibration cal;
  cal.fit = fit_line(elongation_mm, force_n);
  if (!(cal.fit.slope > 0.0)) {
    throw Error(ErrorCode::calibration_failure,
                "force does not increase with elongation (slope " + std::to_string(cal.fit.slope) +
                    ")");
  }
  cal.spring_constant_n_per_mm = cal.fit.slope;
  if (cal.fit.r_squared < min_r_squared) {
    cal.warning = "poor spring fit: R^2 = " + std::to_string(cal.fit.r_squared) + " < " +
                  std::to_string(min_r_squared);
  }
  return cal;
}

SensitivityCalibration calibrate_sensitivity(std::span<const double> position_mm,
                                             std::span<const double> amplitude_v,
                                             const SensitivityOptions& options) {
  require_paired(position_mm, amplitude_v);
  const std::size_t n = position_mm.size();
  if (n < 4) throw Error(ErrorCode::invalid_argument, "sensitivity sweep needs >= 4 samples");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(position_mm[i + 1] > position_mm[i])) {
      throw Error(ErrorCode::invalid_argument, "sweep positions must be strictly increasing");
    }
  }

  std::vector<double> slope(n - 1);
  double steepest = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    slope[i] = (amplitude_v[i + 1] - amplitude_v[i]) / (position_mm[i + 1] - position_mm[i]);
    steepest = std::max(steepest, std::abs(slope[i]));
  }
  if (!(steepest > 0.0)) throw Error(ErrorCode::flat_response, "response is flat everywhere");

  const double threshold = options.plateau_fraction * steepest;
  auto active = [&](std::size_t i) { return std::abs(slope[i]) >= threshold; };

  // Longest run of active segments sharing one slope sign; first wins ties.
  std::size_t best_first = 0;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < slope.size();) {
    if (!active(i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < slope.size() && active(j) && std::signbit(slope[j]) == std::signbit(slope[i])) ++j;
    if (j - i > best_len) {
      best_first = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len == 0) throw Error(ErrorCode::flat_response, "no linear region found");

  std::size_t first = best_first;
  std::size_t last = best_first + best_len - 1;
  std::vector<double> run(slope.begin() + static_cast<std::ptrdiff_t>(first),
                          slope.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::nth_element(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(run.size() / 2),
                   run.end());
  const double median = run[run.size() / 2];
  auto off_line = [&](std::size_t i) {
    return std::abs(slope[i] - median) > options.edge_tolerance * std::abs(median);
  };
  // A corner can only straddle the outermost segment on each side.
  if (first < last && off_line(first)) ++first;
  if (last > first && off_line(last)) --last;

  const auto begin = first;
  const auto count = last - first + 2;
  SensitivityCalibration cal;
  cal.fit = fit_line(position_mm.subspan(begin, count), amplitude_v.subspan(begin, count));
  cal.sensitivity_v_per_mm = std::abs(cal.fit.slope);
  cal.linear_region = {position_mm[begin], position_mm[begin + count - 1]};
  return cal;
}

double circuit_output(const CircuitParams& circuit, double series_resistance_ohm,
                      double excitation_v) {
  const double impedance = std::hypot(series_resistance_ohm + circuit.primary_resistance_ohm,
                                      circuit.primary_reactance_ohm);
  if (impedance == 0.0) {
    throw Error(ErrorCode::singular_circuit, "primary circuit has zero impedance");
  }
  return circuit.gain * excitation_v / impedance;
}

double circuit_objective(const CircuitParams& circuit, std::span<const Table1Row> rows) {
  double total = 0.0;
  for (const Table1Row& row : rows) {
    const double predicted =
        circuit_output(circuit, row.series_resistance_ohm, row.excitation_v);
    const double rel = (predicted - row.measured_output_v) / row.measured_output_v;
    total += rel * rel;
  }
  return total;
}

namespace {

struct Candidate {
  double resistance = 0.0;
  double reactance = 0.0;
  double gain = 0.0;
  double objective = 0.0;
};

// Relative residual is gain * h_i - 1 with h_i = V_i / (|Z_i| m_i), so the
// best gain for fixed (r, X) is sum(h) / sum(h^2).
Candidate profile(std::span<const Table1Row> rows, double resistance, double reactance) {
  auto h = [&](const Table1Row& row) {
    const double z = std::hypot(row.series_resistance_ohm + resistance, reactance);
    return row.excitation_v / (z * row.measured_output_v);
  };
  double sh = 0.0;
  double shh = 0.0;
  for (const Table1Row& row : rows) {
    const double v = h(row);
    sh += v;
    shh += v * v;
  }
  Candidate c{resistance, reactance, sh / shh, 0.0};
  for (const Table1Row& row : rows) {
    const double rel = c.gain * h(row) - 1.0;
    c.objective += rel * rel;
  }
  return c;
}

Candidate compass_search(std::span<const Table1Row> rows, Candidate start, double r_max,
                         double x_max, double step_r, double step_x, double tolerance) {
  Candidate best = start;
  const double stop_r = tolerance * r_max;
  const double stop_x = tolerance * x_max;
  for (int iter = 0; iter < 200'000 && (step_r > stop_r || step_x > stop_x); ++iter) {
    bool improved = false;
    const std::array<std::array<double, 2>, 8> moves{{{step_r, 0.0},
                                                      {-step_r, 0.0},
                                                      {0.0, step_x},
                                                      {0.0, -step_x},
                                                      {step_r, step_x},
                                                      {-step_r, -step_x},
                                                      {step_r, -step_x},
                                                      {-step_r, step_x}}};
    for (const auto& move : moves) {
      const double r = std::clamp(best.resistance + move[0], 0.0, r_max);
      const double x = std::clamp(best.reactance + move[1], 0.0, x_max);
      const Candidate trial = profile(rows, r, x);
      if (trial.objective < best.objective) {
        best = trial;
        improved = true;
      }
    }
    if (!improved) {
      step_r *= 0.5;
      step_x *= 0.5;
    }
  }
  return best;
}

}  // namespace

CircuitFit fit_circuit_params(std::span<const Table1Row> rows, const CircuitFitOptions& options) {
  if (rows.size() < 3) {
    throw Error(ErrorCode::underdetermined, "circuit fit needs at least three rows");
  }
  std::set<double> resistances;
  double largest = 0.0;
  for (const Table1Row& row : rows) {
    if (!(row.series_resistance_ohm > 0.0) || !(row.excitation_v > 0.0) ||
        !(row.measured_output_v > 0.0)) {
      throw Error(ErrorCode::invalid_argument, "circuit rows must have positive values");
    }
    resistances.insert(row.series_resistance_ohm);
    largest = std::max(largest, row.series_resistance_ohm);
  }
  if (resistances.size() < 3) {
    throw Error(ErrorCode::underdetermined, "circuit fit needs three distinct resistances");
  }
  if (options.grid_points < 2) {
    throw Error(ErrorCode::invalid_argument, "grid_points must be >= 2");
  }

  const double r_max = options.max_resistance_ohm > 0.0 ? options.max_resistance_ohm : 4.0 * largest;
  const double x_max = options.max_reactance_ohm > 0.0 ? options.max_reactance_ohm : 4.0 * largest;
  const auto g = static_cast<std::size_t>(options.grid_points);
  const double dr = r_max / static_cast<double>(g - 1);
  const double dx = x_max / static_cast<double>(g - 1);

  std::vector<Candidate> grid;
  grid.reserve(g * g);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      grid.push_back(profile(rows, dr * static_cast<double>(i), dx * static_cast<double>(j)));
    }
  }
  // Stable order keeps ties deterministic.
  std::stable_sort(grid.begin(), grid.end(),
                   [](const Candidate& a, const Candidate& b) { return a.objective < b.objective; });

  constexpr std::size_t kStarts = 4;
  Candidate best = grid.front();
  for (std::size_t s = 0; s < std::min(kStarts, grid.size()); ++s) {
    const Candidate refined =
        compass_search(rows, grid[s], r_max, x_max, dr, dx, options.step_tolerance);
    if (refined.objective < best.objective) best = refined;
  }

  CircuitFit fit;
  fit.params.primary_resistance_ohm = best.resistance;
  fit.params.primary_reactance_ohm = best.reactance;
  fit.params.gain = best.gain;
  fit.objective = circuit_objective(fit.params, rows);
  for (const Table1Row& row : rows) {
    const double predicted = circuit_output(fit.params, row.series_resistance_ohm, row.excitation_v);
    const double rel = (predicted - row.measured_output_v) / row.measured_output_v;
    fit.relative_residuals.push_back(rel);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(rel));
  }
  return fit;
}

}  // namespace lvdt
