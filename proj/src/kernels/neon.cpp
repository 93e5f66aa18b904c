// AArch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include "variants.hpp"

namespace lvdt::kernels::detail {
namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

CenteredMoments centered_moments_neon(const double* x, const double* y, std::size_t n,
                                      double mean_x, double mean_y) {
  const float64x2_t mx = vdupq_n_f64(mean_x);
  const float64x2_t my = vdupq_n_f64(mean_y);
  float64x2_t sxx = vdupq_n_f64(0.0);
  float64x2_t sxy = vdupq_n_f64(0.0);
  float64x2_t syy = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(x + i), mx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(y + i), my);
    sxx = vfmaq_f64(sxx, dx, dx);
    sxy = vfmaq_f64(sxy, dx, dy);
    syy = vfmaq_f64(syy, dy, dy);
  }
  CenteredMoments m{vaddvq_f64(sxx), vaddvq_f64(sxy), vaddvq_f64(syy)};
  for (; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.sxx += dx * dx;
    m.sxy += dx * dy;
    m.syy += dy * dy;
  }
  return m;
}

QuadratureSums quadrature_sums_neon(const double* y, const double* s, const double* c,
                                    std::size_t n) {
  float64x2_t ss = vdupq_n_f64(0.0);
  float64x2_t sc = vdupq_n_f64(0.0);
  float64x2_t cc = vdupq_n_f64(0.0);
  float64x2_t ys = vdupq_n_f64(0.0);
  float64x2_t yc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vs = vld1q_f64(s + i);
    const float64x2_t vc = vld1q_f64(c + i);
    const float64x2_t vy = vld1q_f64(y + i);
    ss = vfmaq_f64(ss, vs, vs);
    sc = vfmaq_f64(sc, vs, vc);
    cc = vfmaq_f64(cc, vc, vc);
    ys = vfmaq_f64(ys, vy, vs);
    yc = vfmaq_f64(yc, vy, vc);
  }
  QuadratureSums q{vaddvq_f64(ss), vaddvq_f64(sc), vaddvq_f64(cc), vaddvq_f64(ys),
                   vaddvq_f64(yc)};
  for (; i < n; ++i) {
    q.ss += s[i] * s[i];
    q.sc += s[i] * c[i];
    q.cc += c[i] * c[i];
    q.ys += y[i] * s[i];
    q.yc += y[i] * c[i];
  }
  return q;
}

}  // namespace

const KernelTable kNeonTable{Isa::neon, sum_neon, dot_neon, centered_moments_neon,
                             quadrature_sums_neon};

}  // namespace lvdt::kernels::detail
