#include <algorithm>
#include <cmath>
#include <string>

#include "ghost/error.hpp"
#include "ghost/passage.hpp"

namespace ghost {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (4th order).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

struct DenseStep {
  double r1, r2, r3, r4, r5;

  double at(double theta) const noexcept {
    const double rest = 1.0 - theta;
    return r1 + theta * (r2 + rest * (r3 + theta * (r4 + rest * r5)));
  }
  double slope(double theta) const noexcept {
    // d/dtheta of at(); used only to accelerate the event search.
    const double rest = 1.0 - theta;
    const double inner = r4 + rest * r5;
    const double mid = r3 + theta * inner;
    const double d_inner = -r5;
    const double d_mid = inner + theta * d_inner;
    return r2 + rest * mid + theta * (-mid + rest * d_mid);
  }
};

// Solves dense(theta) = target on [0, 1], dense(0) < target <= dense(1).
double locate_event(const DenseStep& dense, double target, double tol) {
  double lo = 0.0, hi = 1.0;
  double theta = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double miss = dense.at(theta) - target;
    if (std::abs(miss) <= tol) return theta;
    if (miss > 0.0) hi = theta; else lo = theta;
    const double d = dense.slope(theta);
    double next = d > 0.0 ? theta - miss / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == theta || hi - lo <= 1e-17) return next;
    theta = next;
  }
  return theta;
}

}  // namespace

PassageResult integrate_transit_ode(const Flow& flow, double x_enter, double x_exit,
                                    const OdeConfig& cfg, std::vector<TrajectoryPoint>* trace) {
  if (!std::isfinite(x_enter) || !std::isfinite(x_exit)) {
    throw Error(Errc::InvalidArgument, "transit endpoints must be finite");
  }
  if (x_enter > x_exit) throw Error(Errc::InvalidArgument, "ODE transit needs x_enter <= x_exit");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.event_tol > 0.0) || cfg.max_steps < 1) {
    throw Error(Errc::InvalidArgument, "ODE tolerances must be positive");
  }
  if (trace) trace->push_back({0.0, x_enter});
  if (x_enter == x_exit) return {0.0, Engine::Ode, 0.0, 0};
  require_transit(flow, x_enter, x_exit);

  auto f = [&flow](double x) { return flow.rate(x); };

  double t = 0.0;
  double x = x_enter;
  double k1 = f(x);
  std::int64_t evaluations = 1;
  double h = 1e-2 * (x_exit - x_enter) / k1;
  double accumulated = 0.0;  // local error estimates mapped to time units
  bool last_rejected = false;

  for (std::int64_t step = 0; step < cfg.max_steps; ++step) {
    const double k2 = f(x + h * (a21 * k1));
    const double k3 = f(x + h * (a31 * k1 + a32 * k2));
    const double k4 = f(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double x_new = x + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double k7 = f(x_new);
    evaluations += 6;

    const double local = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x), std::abs(x_new));
    const double err = std::abs(local) / scale;

    if (!(err <= 1.0) || !std::isfinite(x_new)) {
      const double shrink = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2))
                                               : kMinFactor;
      h *= shrink;
      last_rejected = true;
      if (h <= 1e-15 * std::max(1.0, std::abs(t))) {
        throw Error(Errc::StepLimitExceeded, "step size underflow at x = " + format_number(x));
      }
      continue;
    }

    accumulated += std::abs(local) / k7;
    if (x_new >= x_exit) {
      DenseStep dense{x, x_new - x, 0.0, 0.0, 0.0};
      dense.r3 = h * k1 - dense.r2;
      dense.r4 = dense.r2 - h * k7 - dense.r3;
      dense.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      const double theta = locate_event(dense, x_exit, cfg.event_tol);
      const double t_exit = t + theta * h;
      const double miss = std::abs(dense.at(theta) - x_exit) / f(x_exit);
      if (trace) trace->push_back({t_exit, x_exit});
      return {t_exit, Engine::Ode, accumulated + miss, evaluations + 1};
    }

    t += h;
    x = x_new;
    k1 = k7;
    if (trace) trace->push_back({t, x});

    double grow = err > 0.0 ? kSafety * std::pow(err, -0.2) : kMaxFactor;
    grow = std::clamp(grow, kMinFactor, kMaxFactor);
    if (last_rejected) grow = std::min(grow, 1.0);
    last_rejected = false;
    h *= grow;
  }
  throw Error(Errc::StepLimitExceeded,
              "no exit after " + std::to_string(cfg.max_steps) + " steps (x = " + format_number(x) + ")");
}

PassageResult passage_time_ode(const VectorField1D& field, double r, double x_enter, double x_exit,
                               const OdeConfig& cfg, std::vector<TrajectoryPoint>* trace) {
  return integrate_transit_ode(make_flow(field, r), x_enter, x_exit, cfg, trace);
}

}  // namespace ghost
