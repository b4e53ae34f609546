// AArch64 variant; built only on ARM hosts.

#include <arm_neon.h>

#include <cmath>

#include "ghost/simd/kernels.hpp"
#include "ghost/simd/lane_math.hpp"

namespace ghost::simd {
namespace {

struct D2 {
  float64x2_t v;
  D2(float64x2_t x) : v(x) {}              // NOLINT
  D2(double x) : v(vdupq_n_f64(x)) {}      // NOLINT
};

struct Mask2 {
  uint64x2_t m;
};

inline D2 operator+(D2 a, D2 b) { return vaddq_f64(a.v, b.v); }
inline D2 operator-(D2 a, D2 b) { return vsubq_f64(a.v, b.v); }
inline D2 operator*(D2 a, D2 b) { return vmulq_f64(a.v, b.v); }
inline D2 sqrt(D2 a) { return vsqrtq_f64(a.v); }
inline D2 abs(D2 a) { return vabsq_f64(a.v); }
inline Mask2 negative(D2 a) { return {vcltq_f64(a.v, vdupq_n_f64(0.0))}; }
inline D2 select(Mask2 m, D2 a, D2 b) { return vbslq_f64(m.m, a.v, b.v); }

inline D2 pow_lanes(D2 a, double p) {
  double buf[2];
  vst1q_f64(buf, a.v);
  for (double& b : buf) b = std::pow(b, p);
  return vld1q_f64(buf);
}

}  // namespace

namespace detail {

void evaluate_neon(const RateKernel& kernel, Output mode, const double* x, double* out,
                   std::size_t n) noexcept {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t r = lanes::rate(D2(vld1q_f64(x + i)), kernel).v;
    if (mode == Output::ReciprocalRate) r = vdivq_f64(one, r);
    vst1q_f64(out + i, r);
  }
  if (i < n) evaluate_scalar(kernel, mode, x + i, out + i, n - i);
}

}  // namespace detail
}  // namespace ghost::simd
