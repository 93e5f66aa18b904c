// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "variants.hpp"

namespace lvdt::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

CenteredMoments centered_moments_avx2(const double* x, const double* y, std::size_t n,
                                      double mean_x, double mean_y) {
  const __m256d mx = _mm256_set1_pd(mean_x);
  const __m256d my = _mm256_set1_pd(mean_y);
  __m256d sxx = _mm256_setzero_pd();
  __m256d sxy = _mm256_setzero_pd();
  __m256d syy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), mx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), my);
    sxx = _mm256_fmadd_pd(dx, dx, sxx);
    sxy = _mm256_fmadd_pd(dx, dy, sxy);
    syy = _mm256_fmadd_pd(dy, dy, syy);
  }
  CenteredMoments m{hsum(sxx), hsum(sxy), hsum(syy)};
  for (; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.sxx += dx * dx;
    m.sxy += dx * dy;
    m.syy += dy * dy;
  }
  return m;
}

QuadratureSums quadrature_sums_avx2(const double* y, const double* s, const double* c,
                                    std::size_t n) {
  __m256d ss = _mm256_setzero_pd();
  __m256d sc = _mm256_setzero_pd();
  __m256d cc = _mm256_setzero_pd();
  __m256d ys = _mm256_setzero_pd();
  __m256d yc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    ss = _mm256_fmadd_pd(vs, vs, ss);
    sc = _mm256_fmadd_pd(vs, vc, sc);
    cc = _mm256_fmadd_pd(vc, vc, cc);
    ys = _mm256_fmadd_pd(vy, vs, ys);
    yc = _mm256_fmadd_pd(vy, vc, yc);
  }
  QuadratureSums q{hsum(ss), hsum(sc), hsum(cc), hsum(ys), hsum(yc)};
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

const KernelTable kAvx2Table{Isa::avx2, sum_avx2, dot_avx2, centered_moments_avx2,
                             quadrature_sums_avx2};

}  // namespace lvdt::kernels::detail
