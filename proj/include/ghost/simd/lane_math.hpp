#pragma once

// Lane-generic formulas shared by the scalar and SIMD kernels. A lane type V
// must provide: V(double) broadcast, +, -, *, /, sqrt(V), abs(V),
// pow_lanes(V, double), negative(V) -> mask, select(mask, V, V).
// Keep the operation order fixed; the ISAs are compared bit for bit.

#include <numbers>

#include "ghost/simd/kernels.hpp"

namespace ghost::simd::lanes {

inline constexpr double kTwoOverPi = 2.0 * std::numbers::inv_pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

template <class V>
V int_power(V base, int k) {
  V result = base;
  bool started = false;
  while (k > 0) {
    if (k & 1) {
      result = started ? result * base : base;
      started = true;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

/// |x|^p for x >= 0.
template <class V>
V power_nonneg(V ax, const PowerPlan& plan) {
  if (!plan.uses_quarters()) return pow_lanes(ax, plan.exponent);
  const int whole = plan.quarters >> 2;
  const int frac = plan.quarters & 3;
  V result = ax;
  bool started = false;
  if (frac != 0) {
    V s = sqrt(ax);
    if (frac == 2) {
      result = s;
    } else {
      V q = sqrt(s);
      result = frac == 1 ? q : s * q;
    }
    started = true;
  }
  if (whole > 0) {
    V p = int_power(ax, whole);
    result = started ? p * result : p;
  }
  return result;
}

/// Piecewise power wave: -1 + |2/pi (t + pi/2)|^p for t < 0, else
/// 1 - |2/pi (t - pi/2)|^p.
template <class V>
V wave(V theta, const PowerPlan& plan) {
  const V two_over_pi(kTwoOverPi);
  const V half_pi(kHalfPi);
  const V one(1.0);
  V lower = power_nonneg(abs(two_over_pi * (theta + half_pi)), plan) - one;
  V upper = one - power_nonneg(abs(two_over_pi * (theta - half_pi)), plan);
  return select(negative(theta), lower, upper);
}

template <class V>
V rate(V x, const RateKernel& kernel) {
  const V offset(kernel.offset);
  if (kernel.shape == RateShape::Even) return offset + power_nonneg(abs(x), kernel.power);
  return offset - wave(x, kernel.power);
}

}  // namespace ghost::simd::lanes
