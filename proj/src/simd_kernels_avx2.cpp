// AVX2 kernel bodies.  This TU is compiled with -mavx2 and must only be
// entered through the cpuid dispatch in simd_kernels.cpp.
//
// No FMA anywhere: contraction would change roundings and break the bitwise
// match with the scalar reference.

#include <cstddef>
#include <immintrin.h>

namespace ricci::kernels::avx2 {

void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, vx), _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, vx), _mm256_mul_pd(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

namespace {

// ((lane0+lane2) + (lane1+lane3)) -- the combination order the scalar
// reference commits to.
inline double reduce_lanes(__m256d acc) noexcept {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[2]) + (lane[1] + lane[3]);
}

} // namespace

double dot(const double* x, const double* y, std::size_t n) noexcept {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double acc = reduce_lanes(vacc);
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) noexcept {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    vacc = _mm256_add_pd(vacc, _mm256_mul_pd(vx, vx));
  }
  double acc = reduce_lanes(vacc);
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

} // namespace ricci::kernels::avx2
