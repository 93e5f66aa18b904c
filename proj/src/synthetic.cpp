#include "lvdt/synthetic.hpp"

#include <random>

#include "lvdt/error.hpp"

namespace lvdt::synthetic {

SpringTrace spring_trace(double spring_constant, double max_elongation_mm, std::size_t n_points,
                         double noise_fraction, std::uint64_t seed) {
  if (n_points < 2) throw Error(ErrorCode::invalid_argument, "spring trace needs >= 2 points");
  if (!(max_elongation_mm > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "max elongation must be > 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  SpringTrace trace;
  trace.elongation_mm.reserve(n_points);
  trace.force_n.reserve(n_points);
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = max_elongation_mm * static_cast<double>(i) / last;
    trace.elongation_mm.push_back(x);
    trace.force_n.push_back(spring_constant * x * (1.0 + noise_fraction * unit(rng)));
  }
  return trace;
}

IndentationTrace with_force_noise(IndentationTrace trace, double noise_fraction,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (IndentationSample& s : trace.samples) s.force_n *= 1.0 + noise_fraction * unit(rng);
  return trace;
}

}  // namespace lvdt::synthetic
