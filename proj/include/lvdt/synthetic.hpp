#pragma once

// Seeded synthetic bench data.

#include <cstdint>

#include "lvdt/calibration.hpp"
#include "lvdt/contact.hpp"

namespace lvdt::synthetic {

struct SpringTrace {
  std::vector<double> elongation_mm;
  std::vector<double> force_n;
};

/// n_points elongations evenly spaced on [0, max]; force k*x scaled by
/// (1 + noise_fraction * N(0,1)) per sample.
SpringTrace spring_trace(double spring_constant, double max_elongation_mm, std::size_t n_points,
                         double noise_fraction, std::uint64_t seed);

/// Multiplies every force sample by (1 + noise_fraction * N(0,1)).
IndentationTrace with_force_noise(IndentationTrace trace, double noise_fraction,
                                  std::uint64_t seed);

}  // namespace lvdt::synthetic
