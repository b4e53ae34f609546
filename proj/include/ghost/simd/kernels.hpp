#pragma once

// Batched evaluation of bottleneck flow rates.
//
// Every flow handled by the passage engines has one of two shapes:
//
//   Even          rate(x) = offset + |x|^p
//   PendulumWave  rate(t) = offset - F_p(t),  F_p the piecewise power wave
//
// The scalar path is the reference. SIMD paths run the exact same sequence
// of IEEE operations per lane (add, mul, sqrt, div; std::pow for exponents
// that are not a multiple of 1/4), so all ISAs agree bit for bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace ghost::simd {

/// How |x|^p is evaluated. Exponents that are positive multiples of 1/4 (up
/// to 64) are built from square roots and products; anything else falls back
/// to std::pow.
struct PowerPlan {
  int quarters = 0;  // p = quarters / 4 when > 0
  double exponent = 1.0;

  static PowerPlan for_exponent(double p) noexcept;
  bool uses_quarters() const noexcept { return quarters > 0; }
};

enum class RateShape { Even, PendulumWave };

struct RateKernel {
  RateShape shape = RateShape::Even;
  double offset = 0.0;
  PowerPlan power{};
};

enum class Output { Rate, ReciprocalRate };

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// Best supported ISA, unless GHOST_SIMD=scalar|avx2|neon forces one.
Isa active_isa() noexcept;

double power_abs(double x, const PowerPlan& plan) noexcept;
double wave_value(double theta, const PowerPlan& plan) noexcept;
double rate_at(const RateKernel& kernel, double x) noexcept;

/// out[i] = rate(x[i]) or 1 / rate(x[i]). Sizes must match.
void evaluate(const RateKernel& kernel, Output mode, std::span<const double> x,
              std::span<double> out);
void evaluate_with(Isa isa, const RateKernel& kernel, Output mode,
                   std::span<const double> x, std::span<double> out);

namespace detail {
void evaluate_scalar(const RateKernel& kernel, Output mode, const double* x, double* out,
                     std::size_t n) noexcept;
#if defined(GHOST_HAVE_AVX2)
void evaluate_avx2(const RateKernel& kernel, Output mode, const double* x, double* out,
                   std::size_t n) noexcept;
#endif
#if defined(GHOST_HAVE_NEON)
void evaluate_neon(const RateKernel& kernel, Output mode, const double* x, double* out,
                   std::size_t n) noexcept;
#endif
}  // namespace detail

}  // namespace ghost::simd
