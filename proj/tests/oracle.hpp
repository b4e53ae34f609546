#pragma once

// Test-only reference computations. Nothing here calls into the library's
// engines: integrals go through Boost.Math, roots through plain bisection.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

/// Integral of f over [lo, hi] split at the given interior points.
inline double integrate(const std::function<double(double)>& f, std::vector<double> cuts) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += ts.integrate(f, cuts[i], cuts[i + 1], 1e-14);
  }
  return total;
}

/// One-sided passage of r + x^alpha over [0, b], graded so the r^(1/alpha)
/// boundary layer is resolved.
inline double power_passage(double alpha, double r, double b = 1.0) {
  auto f = [=](double x) { return 1.0 / (r + std::pow(x, alpha)); };
  std::vector<double> cuts{0.0};
  for (double s = std::pow(r, 1.0 / alpha); s < b; s *= 10.0) cuts.push_back(s);
  cuts.push_back(b);
  return integrate(f, cuts);
}

/// Same, over [-b, b] using evenness.
inline double power_passage_sym(double alpha, double r, double b = 1.0) {
  return 2.0 * power_passage(alpha, r, b);
}

/// Independent transcription of the four-branch wave on [-pi, pi].
inline double wave(double a, double theta) {
  constexpr double pi = std::numbers::pi;
  if (theta < -pi / 2) return -1.0 + std::pow(-2.0 / pi * (theta + pi / 2), a);
  if (theta < 0.0) return -1.0 + std::pow(2.0 / pi * (theta + pi / 2), a);
  if (theta < pi / 2) return 1.0 - std::pow(-2.0 / pi * (theta - pi / 2), a);
  return 1.0 - std::pow(2.0 / pi * (theta - pi / 2), a);
}

/// Root of f in [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace oracle
