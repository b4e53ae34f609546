#include "ghost/pendulum.hpp"

#include <cmath>

#include "ghost/error.hpp"

namespace ghost::pendulum {
namespace {

constexpr double kPi = std::numbers::pi;

void check_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(Errc::InvalidArgument, "wave exponent a must be > 0");
}

void check_theta(double theta) {
  if (!(std::abs(theta) <= kPi)) {
    throw Error(Errc::DomainError, "theta = " + format_number(theta) + " outside [-pi, pi]");
  }
}

}  // namespace

PendulumParams PendulumParams::make(double a, double omega) {
  check_a(a);
  if (!std::isfinite(omega)) throw Error(Errc::InvalidArgument, "omega must be finite");
  return {a, omega};
}

double wave_F(double a, double theta) {
  check_a(a);
  check_theta(theta);
  return simd::wave_value(theta, simd::PowerPlan::for_exponent(a));
}

double elongation_L(double a, double theta, const ElongationPolicy& policy) {
  check_a(a);
  check_theta(theta);
  if (!(policy.l_max >= 1.0)) throw Error(Errc::InvalidArgument, "l_max must be >= 1");
  const bool singular = theta == 0.0 || std::abs(theta) == kPi;
  if (singular) {
    if (policy.handling == SingularHandling::Exclude) {
      throw Error(Errc::SingularPoint, "L is 0/0 at theta = " + format_number(theta));
    }
    return policy.l_max;
  }
  const double length = wave_F(a, theta) / std::sin(theta);
  if (policy.handling == SingularHandling::Cap) return std::min(length, policy.l_max);
  return length;
}

double pendulum_rhs(const PendulumParams& p, double theta) { return p.omega - wave_F(p.a, theta); }

Flow make_flow(const PendulumParams& p) {
  check_a(p.a);
  simd::RateKernel kernel;
  kernel.shape = simd::RateShape::PendulumWave;
  kernel.offset = p.omega;
  kernel.power = simd::PowerPlan::for_exponent(p.a);
  // pi/2: rate minimum; -pi/2: maximum; 0: branch switch.
  return Flow{kernel, {-0.5 * kPi, 0.0, 0.5 * kPi}};
}

PassageResult bottleneck_time(const PendulumParams& p, Interval iv, Engine engine,
                              const QuadratureConfig& qcfg, const OdeConfig& ocfg) {
  iv = Interval::make(iv.lo, iv.hi);
  if (iv.lo < 0.0 || iv.hi > kPi) throw Error(Errc::InvalidArgument, "bottleneck interval must lie in [0, pi]");
  if (!(p.omega > 1.0)) {
    throw Error(Errc::NoTransit, "omega = " + format_number(p.omega) + " <= 1 leaves fixed points near pi/2");
  }
  const Flow flow = make_flow(p);
  switch (engine) {
    case Engine::Quadrature: return integrate_transit(flow, iv, qcfg);
    case Engine::Ode: return integrate_transit_ode(flow, iv.lo, iv.hi, ocfg);
    case Engine::ClosedForm: break;
  }
  throw Error(Errc::InvalidArgument, "bottleneck time runs the quadrature or ODE engine");
}

PassageResult rotation_period(const PendulumParams& p, const QuadratureConfig& cfg) {
  if (!(p.omega > 1.0)) {
    throw Error(Errc::NoTransit, "omega = " + format_number(p.omega) + " <= 1: no full rotation");
  }
  return integrate_transit(make_flow(p), {-kPi, kPi}, cfg);
}

std::vector<ScalingSample> bottleneck_sweep(double a, const SweepSpec& spec, Interval iv) {
  check_a(a);
  spec.validate();
  return sweep_probe(
      [&](double r) {
        const PendulumParams p{a, 1.0 + r};
        return bottleneck_time(p, iv, spec.engine, spec.quadrature, spec.ode).time;
      },
      spec);
}

}  // namespace ghost::pendulum
