#pragma once

// Overdamped pendulum with angle-dependent length:
//
//   theta' = omega - F_a(theta),   L(theta) = F_a(theta) / sin(theta)
//
// F_a is the piecewise power wave with F_a(pi/2) = 1, F_a(-pi/2) = -1 and
// F_a(0) = F_a(+-pi) = 0. The saddle-node sits at (omega, theta) = (1, pi/2)
// for every a > 0; near it the rate is (omega - 1) + |2/pi (theta - pi/2)|^a,
// so r = omega - 1 plays the role of the bifurcation parameter.

#include <numbers>
#include <vector>

#include "ghost/passage.hpp"
#include "ghost/scaling.hpp"

namespace ghost::pendulum {

struct PendulumParams {
  double a = 1.0;
  double omega = 1.0;

  /// Throws InvalidArgument unless a > 0 and omega is finite.
  static PendulumParams make(double a, double omega);
};

enum class SingularHandling { Exclude, Cap };

struct ElongationPolicy {
  double l_max = 100.0;
  SingularHandling handling = SingularHandling::Exclude;
};

inline constexpr Interval kBottleneck{0.25 * std::numbers::pi, 0.75 * std::numbers::pi};

double wave_F(double a, double theta);
double elongation_L(double a, double theta, const ElongationPolicy& policy = {});
double pendulum_rhs(const PendulumParams& p, double theta);

Flow make_flow(const PendulumParams& p);

/// Passage time through iv (a subset of [0, pi]) around the bottleneck.
PassageResult bottleneck_time(const PendulumParams& p, Interval iv = kBottleneck,
                              Engine engine = Engine::Quadrature,
                              const QuadratureConfig& qcfg = {}, const OdeConfig& ocfg = {});

/// Period of one full revolution, the integral of 1/(omega - F_a) over [-pi, pi].
PassageResult rotation_period(const PendulumParams& p, const QuadratureConfig& cfg = {});

/// Bottleneck times on the sweep grid, with r = omega - 1.
std::vector<ScalingSample> bottleneck_sweep(double a, const SweepSpec& spec,
                                            Interval iv = kBottleneck);

}  // namespace ghost::pendulum
