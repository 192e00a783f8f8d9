#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "foeval/kernels.hpp"

#define FOEVAL_AVX2 __attribute__((target("avx2,fma")))

namespace foeval::kernels::avx2 {

namespace {

FOEVAL_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

FOEVAL_AVX2
void multiply(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

FOEVAL_AVX2
double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    i += 4;
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

FOEVAL_AVX2
double sum_squares(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  if (i + 4 <= n) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
    i += 4;
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += x[i] * x[i];
  return sum;
}

FOEVAL_AVX2
void power_from_complex(double* dst, const double* interleaved,
                        std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(interleaved + 2 * i);      // r0 i0 r1 i1
    const __m256d v1 = _mm256_loadu_pd(interleaved + 2 * i + 4);  // r2 i2 r3 i3
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0),
                                     _mm256_mul_pd(v1, v1));
    // hadd yields (p0, p2, p1, p3); restore bin order
    _mm256_storeu_pd(dst + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i) {
    const double re = interleaved[2 * i];
    const double im = interleaved[2 * i + 1];
    dst[i] = re * re + im * im;
  }
}

FOEVAL_AVX2
double strided_sum_squares(const double* v, std::size_t stride,
                           std::size_t count) {
  const int s = static_cast<int>(stride);
  __m128i idx = _mm_setr_epi32(s, 2 * s, 3 * s, 4 * s);
  const __m128i step = _mm_set1_epi32(4 * s);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d g = _mm256_i32gather_pd(v, idx, 8);
    acc = _mm256_fmadd_pd(g, g, acc);
    idx = _mm_add_epi32(idx, step);
  }
  double sum = hsum(acc);
  for (k += 1; k <= count; ++k) {
    const double s2 = v[k * stride];
    sum += s2 * s2;
  }
  return sum;
}

}  // namespace foeval::kernels::avx2

#endif  // x86_64
