// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "ghost/simd/kernels.hpp"
#include "ghost/simd/lane_math.hpp"

namespace ghost::simd {
namespace {

struct D4 {
  __m256d v;
  D4(__m256d x) : v(x) {}                      // NOLINT
  D4(double x) : v(_mm256_set1_pd(x)) {}       // NOLINT
};

struct Mask4 {
  __m256d m;
};

inline D4 operator+(D4 a, D4 b) { return _mm256_add_pd(a.v, b.v); }
inline D4 operator-(D4 a, D4 b) { return _mm256_sub_pd(a.v, b.v); }
inline D4 operator*(D4 a, D4 b) { return _mm256_mul_pd(a.v, b.v); }
inline D4 sqrt(D4 a) { return _mm256_sqrt_pd(a.v); }
inline D4 abs(D4 a) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v); }
inline Mask4 negative(D4 a) { return {_mm256_cmp_pd(a.v, _mm256_setzero_pd(), _CMP_LT_OQ)}; }
inline D4 select(Mask4 m, D4 a, D4 b) { return _mm256_blendv_pd(b.v, a.v, m.m); }

inline D4 pow_lanes(D4 a, double p) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, a.v);
  for (double& b : buf) b = std::pow(b, p);
  return _mm256_load_pd(buf);
}

}  // namespace

namespace detail {

void evaluate_avx2(const RateKernel& kernel, Output mode, const double* x, double* out,
                   std::size_t n) noexcept {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = lanes::rate(D4(_mm256_loadu_pd(x + i)), kernel).v;
    if (mode == Output::ReciprocalRate) r = _mm256_div_pd(one, r);
    _mm256_storeu_pd(out + i, r);
  }
  if (i < n) evaluate_scalar(kernel, mode, x + i, out + i, n - i);
}

}  // namespace detail
}  // namespace ghost::simd
