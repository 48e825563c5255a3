#include "ricci/simd_kernels.hpp"

#include <atomic>

#if defined(__aarch64__) && defined(__ARM_NEON)
#define RICCI_HAVE_NEON 1
#include <arm_neon.h>
#endif

namespace ricci::kernels {

// ------------------------------------------------------------------- scalar

namespace scalar {

void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Reductions run four independent accumulators and combine them as
// ((a0+a2)+(a1+a3)) + tail; the AVX2 variant produces the identical
// sequence of roundings.

double dot(const double* x, const double* y, std::size_t n) noexcept {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i + 0] * y[i + 0];
    a1 += x[i + 1] * y[i + 1];
    a2 += x[i + 2] * y[i + 2];
    a3 += x[i + 3] * y[i + 3];
  }
  double acc = (a0 + a2) + (a1 + a3);
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) noexcept {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i + 0] * x[i + 0];
    a1 += x[i + 1] * x[i + 1];
    a2 += x[i + 2] * x[i + 2];
    a3 += x[i + 3] * x[i + 3];
  }
  double acc = (a0 + a2) + (a1 + a3);
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

} // namespace scalar

// --------------------------------------------------------------------- neon

#if defined(RICCI_HAVE_NEON)
namespace neon {

// Two float64x2 accumulators give the same virtual four lanes as AVX2.

void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vsubq_f64(vmulq_f64(vc, vx), vmulq_f64(vs, vy)));
    vst1q_f64(y + i, vaddq_f64(vmulq_f64(vs, vx), vmulq_f64(vc, vy)));
  }
  if (i < n) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double acc = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc23, 0)) +
               (vgetq_lane_f64(acc01, 1) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) noexcept {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t v0 = vld1q_f64(x + i);
    const float64x2_t v1 = vld1q_f64(x + i + 2);
    acc01 = vaddq_f64(acc01, vmulq_f64(v0, v0));
    acc23 = vaddq_f64(acc23, vmulq_f64(v1, v1));
  }
  double acc = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc23, 0)) +
               (vgetq_lane_f64(acc01, 1) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

} // namespace neon
#endif // RICCI_HAVE_NEON

// ----------------------------------------------------------------- dispatch

#if defined(RICCI_HAVE_AVX2_TU)
namespace avx2 {
// Bodies live in simd_kernels_avx2.cpp (compiled with -mavx2).
void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
} // namespace avx2
#endif

namespace {

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(RICCI_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::neon:
#if defined(RICCI_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() noexcept {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<Isa> g_isa{detect_isa()};

} // namespace

Isa active_isa() noexcept { return g_isa.load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

Isa force_isa(Isa isa) noexcept {
  if (!isa_supported(isa)) isa = Isa::scalar;
  return g_isa.exchange(isa, std::memory_order_relaxed);
}

void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept {
  switch (active_isa()) {
#if defined(RICCI_HAVE_AVX2_TU)
    case Isa::avx2: avx2::apply_rotation(x, y, n, c, s); return;
#endif
#if defined(RICCI_HAVE_NEON)
    case Isa::neon: neon::apply_rotation(x, y, n, c, s); return;
#endif
    default: scalar::apply_rotation(x, y, n, c, s); return;
  }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  switch (active_isa()) {
#if defined(RICCI_HAVE_AVX2_TU)
    case Isa::avx2: return avx2::dot(x, y, n);
#endif
#if defined(RICCI_HAVE_NEON)
    case Isa::neon: return neon::dot(x, y, n);
#endif
    default: return scalar::dot(x, y, n);
  }
}

double sum_squares(const double* x, std::size_t n) noexcept {
  switch (active_isa()) {
#if defined(RICCI_HAVE_AVX2_TU)
    case Isa::avx2: return avx2::sum_squares(x, n);
#endif
#if defined(RICCI_HAVE_NEON)
    case Isa::neon: return neon::sum_squares(x, n);
#endif
    default: return scalar::sum_squares(x, n);
  }
}

} // namespace ricci::kernels
