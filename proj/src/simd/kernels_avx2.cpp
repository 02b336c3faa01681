// Compiled with -mavx2 -mfma; only called after a runtime CPU check.

#include <immintrin.h>

#include "centroidcut/simd/kernels.hpp"

namespace centroidcut::simd::avx2 {

namespace {

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

PowerIntegrals integrate_power(const double* t, const double* h, std::size_t knots, unsigned power) {
  PowerIntegrals out;
  if (knots < 2) return out;
  const std::size_t segments = knots - 1;
  const double p1 = power + 1.0;
  const double p12 = p1 * (power + 2.0);
  const __m256d inv_p1 = _mm256_set1_pd(1.0 / p1);
  const __m256d inv_p12 = _mm256_set1_pd(1.0 / p12);
  const __m256d one = _mm256_set1_pd(1.0);

  __m256d mass_acc = _mm256_setzero_pd();
  __m256d moment_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= segments; i += 4) {
    const __m256d t0 = _mm256_loadu_pd(t + i);
    const __m256d t1 = _mm256_loadu_pd(t + i + 1);
    const __m256d h0 = _mm256_loadu_pd(h + i);
    const __m256d h1 = _mm256_loadu_pd(h + i + 1);
    const __m256d dt = _mm256_sub_pd(t1, t0);
    __m256d s = one;
    __m256d s1 = one;
    __m256d h1k = one;
    for (unsigned k = 1; k <= power; ++k) {
      h1k = _mm256_mul_pd(h1k, h1);
      s = _mm256_fmadd_pd(s, h0, h1k);
      s1 = _mm256_fmadd_pd(s1, h0, _mm256_mul_pd(_mm256_set1_pd(k + 1.0), h1k));
    }
    const __m256d mass = _mm256_mul_pd(_mm256_mul_pd(dt, s), inv_p1);
    mass_acc = _mm256_add_pd(mass_acc, mass);
    const __m256d tail = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(dt, dt), s1), inv_p12);
    moment_acc = _mm256_add_pd(moment_acc, _mm256_fmadd_pd(t0, mass, tail));
  }
  out.mass = horizontal_sum(mass_acc);
  out.moment = horizontal_sum(moment_acc);
  if (i < segments) {
    const PowerIntegrals rest = scalar::integrate_power(t + i, h + i, knots - i, power);
    out.mass += rest.mass;
    out.moment += rest.moment;
  }
  return out;
}

void project(const double* const* columns, std::size_t dim, const double* direction, double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(columns[k] + i), _mm256_set1_pd(direction[k]), acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) acc += columns[k][i] * direction[k];
    out[i] = acc;
  }
}

}  // namespace centroidcut::simd::avx2
