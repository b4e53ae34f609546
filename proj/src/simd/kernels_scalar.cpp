#include <cmath>

#include "ghost/simd/kernels.hpp"
#include "ghost/simd/lane_math.hpp"

namespace ghost::simd {
namespace {

struct Lane {
  double v;
  Lane(double x) : v(x) {}  // NOLINT: broadcast
};

inline Lane operator+(Lane a, Lane b) { return a.v + b.v; }
inline Lane operator-(Lane a, Lane b) { return a.v - b.v; }
inline Lane operator*(Lane a, Lane b) { return a.v * b.v; }
inline Lane sqrt(Lane a) { return std::sqrt(a.v); }
inline Lane abs(Lane a) { return std::fabs(a.v); }
inline Lane pow_lanes(Lane a, double p) { return std::pow(a.v, p); }
inline bool negative(Lane a) { return a.v < 0.0; }
inline Lane select(bool m, Lane a, Lane b) { return m ? a : b; }

}  // namespace

PowerPlan PowerPlan::for_exponent(double p) noexcept {
  PowerPlan plan;
  plan.exponent = p;
  const double q = p * 4.0;
  if (q >= 1.0 && q <= 256.0 && q == std::floor(q)) plan.quarters = static_cast<int>(q);
  return plan;
}

double power_abs(double x, const PowerPlan& plan) noexcept {
  return lanes::power_nonneg(Lane(std::fabs(x)), plan).v;
}

double wave_value(double theta, const PowerPlan& plan) noexcept {
  return lanes::wave(Lane(theta), plan).v;
}

double rate_at(const RateKernel& kernel, double x) noexcept {
  return lanes::rate(Lane(x), kernel).v;
}

namespace detail {

void evaluate_scalar(const RateKernel& kernel, Output mode, const double* x, double* out,
                     std::size_t n) noexcept {
  if (mode == Output::Rate) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lanes::rate(Lane(x[i]), kernel).v;
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / lanes::rate(Lane(x[i]), kernel).v;
  }
}

}  // namespace detail
}  // namespace ghost::simd
