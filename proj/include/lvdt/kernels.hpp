#pragma once

// Reduction kernels behind the signal chain and the fitting code.
//
// Every kernel has a portable scalar reference implementation and, where the
// target supports it, a vector variant (AVX2+FMA on x86-64, NEON on AArch64).
// The active variant is picked once at runtime from the CPU feature flags.
// Vector variants reassociate the sums, so they agree with the scalar path to
// rounding, not bit for bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace lvdt::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// Sums of squares and cross products about the supplied centres.
struct CenteredMoments {
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
};

/// Correlations of a signal y against an in-phase basis s and a quadrature
/// basis c, plus the Gram entries of the basis.
struct QuadratureSums {
  double ss = 0.0;
  double sc = 0.0;
  double cc = 0.0;
  double ys = 0.0;
  double yc = 0.0;
};

struct KernelTable {
  Isa isa;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  CenteredMoments (*centered_moments)(const double* x, const double* y, std::size_t n,
                                      double mean_x, double mean_y);
  QuadratureSums (*quadrature_sums)(const double* y, const double* s, const double* c,
                                    std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Null when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

/// Best table available on this machine. Setting LVDT_FORCE_SCALAR=1 in the
/// environment pins the scalar path.
const KernelTable& active_table() noexcept;

// Span front ends over active_table(). Paired spans must have equal length.
double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y);
QuadratureSums quadrature_sums(std::span<const double> y, std::span<const double> s,
                               std::span<const double> c);

}  // namespace lvdt::kernels
