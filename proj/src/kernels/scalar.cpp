#include "variants.hpp"

namespace lvdt::kernels::detail {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

CenteredMoments centered_moments_scalar(const double* x, const double* y, std::size_t n,
                                        double mean_x, double mean_y) {
  CenteredMoments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.sxx += dx * dx;
    m.sxy += dx * dy;
    m.syy += dy * dy;
  }
  return m;
}

QuadratureSums quadrature_sums_scalar(const double* y, const double* s, const double* c,
                                      std::size_t n) {
  QuadratureSums q;
  for (std::size_t i = 0; i < n; ++i) {
    q.ss += s[i] * s[i];
    q.sc += s[i] * c[i];
    q.cc += c[i] * c[i];
    q.ys += y[i] * s[i];
    q.yc += y[i] * c[i];
  }
  return q;
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar, sum_scalar, dot_scalar, centered_moments_scalar,
                               quadrature_sums_scalar};

}  // namespace lvdt::kernels::detail
