#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "ghost/error.hpp"
#include "ghost/passage.hpp"

namespace ghost {
namespace {

// Kronrod 21-point rule; odd entries are the embedded 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.00000000000000000e+00, 1.48874338981631211e-01, 2.94392862701460198e-01,
    4.33395394129247191e-01, 5.62757134668604683e-01, 6.79409568299024406e-01,
    7.80817726586416897e-01, 8.65063366688984511e-01, 9.30157491355708226e-01,
    9.73906528517171720e-01, 9.95657163025808081e-01,
};
constexpr std::array<double, 11> kKronrodWeights = {
    1.49445554002916906e-01, 1.47739104901338491e-01, 1.42775938577060081e-01,
    1.34709217311473326e-01, 1.23491976262065851e-01, 1.09387158802297642e-01,
    9.31254545836976055e-02, 7.50396748109199528e-02, 5.47558965743519960e-02,
    3.25581623079647275e-02, 1.16946388673718743e-02,
};
constexpr std::array<double, 5> kGaussWeights = {
    2.95524224714752870e-01, 2.69266719309996355e-01, 2.19086362515982044e-01,
    1.49451349150580593e-01, 6.66713443086881376e-02,
};
constexpr std::size_t kNodes = 21;

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const noexcept { return a.error < b.error; }
};

Panel evaluate_panel(const simd::RateKernel& kernel, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  // Layout: [0] center, then (center - h*xi_i, center + h*xi_i) for i = 1..10.
  std::array<double, kNodes> x;
  std::array<double, kNodes> f;
  x[0] = center;
  for (std::size_t i = 1; i < kKronrodNodes.size(); ++i) {
    x[2 * i - 1] = center - half * kKronrodNodes[i];
    x[2 * i] = center + half * kKronrodNodes[i];
  }
  simd::evaluate(kernel, simd::Output::ReciprocalRate, x, f);

  double kronrod = kKronrodWeights[0] * f[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < kKronrodNodes.size(); ++i) {
    const double pair = f[2 * i - 1] + f[2 * i];
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}


// Cuts at m +- w 10^k around the rate minimum m, w the boundary-layer width,
// so tall narrow peaks on either side are seen by the first panels.
void grade_minimum(const simd::RateKernel& k, double lo, double hi, std::vector<double>& cuts) {
  double m = 0.0;
  double depth = k.offset;
  double scale = 1.0;
  if (k.shape == simd::RateShape::PendulumWave) {
    m = 0.5 * std::numbers::pi;
    depth = k.offset - 1.0;
    scale = 0.5 * std::numbers::pi;
  }
  if (!(depth > 0.0) || m < lo || m > hi) return;
  const double w = scale * std::pow(depth, 1.0 / k.power.exponent);
  if (!(w > 0.0) || !std::isfinite(w)) return;
  for (double d = w; d < hi - lo; d *= 10.0) {
    if (m - d > lo) cuts.push_back(m - d);
    if (m + d < hi) cuts.push_back(m + d);
  }
}

}  // namespace

Interval Interval::make(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(Errc::InvalidArgument, "interval needs finite lo < hi");
  }
  return {lo, hi};
}

std::string_view engine_name(Engine engine) noexcept {
  switch (engine) {
    case Engine::Quadrature: return "quadrature";
    case Engine::Ode: return "ode";
    case Engine::ClosedForm: return "closed-form";
  }
  return "quadrature";
}

Engine parse_engine(std::string_view text) {
  if (text == "quadrature") return Engine::Quadrature;
  if (text == "ode") return Engine::Ode;
  throw Error(Errc::InvalidArgument, "unknown engine '" + std::string(text) + "'");
}

Flow make_flow(const VectorField1D& field, double r) {
  if (!std::isfinite(r)) throw Error(Errc::InvalidArgument, "r must be finite");
  return Flow{field.kernel(r), {0.0}};
}

void require_transit(const Flow& flow, double lo, double hi) {
  auto check = [&](double x) {
    const double v = flow.rate(x);
    if (!(v > 0.0)) {
      throw Error(Errc::NoTransit, "rate " + format_number(v) + " at x = " + format_number(x) +
                                       " blocks the passage");
    }
  };
  check(lo);
  check(hi);
  for (double b : flow.breakpoints) {
    if (b > lo && b < hi) check(b);
  }
}

PassageResult integrate_transit(const Flow& flow, Interval iv, const QuadratureConfig& cfg) {
  iv = Interval::make(iv.lo, iv.hi);
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_subdivisions < 1) {
    throw Error(Errc::InvalidArgument, "quadrature tolerances must be positive");
  }
  require_transit(flow, iv.lo, iv.hi);

  std::vector<double> cuts{iv.lo};
  for (double b : flow.breakpoints) {
    if (b > iv.lo && b < iv.hi) cuts.push_back(b);
  }
  grade_minimum(flow.kernel, iv.lo, iv.hi, cuts);
  cuts.push_back(iv.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> settled;  // too narrow to bisect further
  double value = 0.0;
  double error = 0.0;
  std::int64_t evaluations = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = evaluate_panel(flow.kernel, cuts[i], cuts[i + 1]);
    evaluations += kNodes;
    value += p.value;
    error += p.error;
    active.push(p);
  }

  std::int64_t subdivisions = 0;
  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
  while (error > tolerance() && !active.empty()) {
    if (subdivisions >= cfg.max_subdivisions) {
      throw Error(Errc::ToleranceNotMet, "quadrature exhausted " +
                                             std::to_string(cfg.max_subdivisions) +
                                             " subdivisions (error " + format_number(error) + ")");
    }
    Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      settled.push_back(worst);
      continue;
    }
    Panel left = evaluate_panel(flow.kernel, worst.lo, mid);
    Panel right = evaluate_panel(flow.kernel, mid, worst.hi);
    evaluations += 2 * kNodes;
    ++subdivisions;
    value += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    active.push(left);
    active.push(right);
  }

  // Re-sum from the panels so running-update drift does not leak into the result.
  std::vector<Panel> all = std::move(settled);
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : all) {
    value += p.value;
    error += p.error;
  }
  if (error > tolerance()) {
    throw Error(Errc::ToleranceNotMet,
                "quadrature stalled at error " + format_number(error) + " (panels at resolution limit)");
  }
  if (!std::isfinite(value)) throw Error(Errc::ToleranceNotMet, "quadrature produced a non-finite value");
  return {value, Engine::Quadrature, error, evaluations};
}

PassageResult passage_time_quadrature(const VectorField1D& field, double r, Interval iv,
                                      const QuadratureConfig& cfg) {
  return integrate_transit(make_flow(field, r), iv, cfg);
}

}  // namespace ghost
