#pragma once

// Passage time of x' = rate(x) through an interval: the "ghost" delay left
// behind when the two equilibria of a saddle-node have annihilated.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ghost/fields.hpp"
#include "ghost/simd/kernels.hpp"

namespace ghost {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  /// Throws InvalidArgument unless lo < hi, both finite.
  static Interval make(double lo, double hi);
  double width() const noexcept { return hi - lo; }
};

enum class Engine { Quadrature, Ode, ClosedForm };

std::string_view engine_name(Engine engine) noexcept;
Engine parse_engine(std::string_view text);

struct PassageResult {
  double time = 0.0;
  Engine engine = Engine::Quadrature;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::int64_t max_subdivisions = 1'000'000;
};

struct OdeConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  std::int64_t max_steps = 100'000'000;
  double event_tol = 1e-12;
};

/// A scalar flow ready for the engines. `breakpoints` lists every point where
/// the rate has a minimum or a kink; quadrature splits there and the transit
/// check inspects them.
struct Flow {
  simd::RateKernel kernel;
  std::vector<double> breakpoints;

  double rate(double x) const noexcept { return simd::rate_at(kernel, x); }
};

Flow make_flow(const VectorField1D& field, double r);

/// Throws NoTransit when the rate is not strictly positive on [lo, hi].
void require_transit(const Flow& flow, double lo, double hi);

/// Adaptive 10/21-point Gauss-Kronrod quadrature of 1/rate over iv.
PassageResult integrate_transit(const Flow& flow, Interval iv, const QuadratureConfig& cfg = {});

struct TrajectoryPoint {
  double t;
  double x;
};

/// Dormand-Prince 5(4) integration from x_enter until x reaches x_exit.
/// Accepted steps are appended to `trace` when given.
PassageResult integrate_transit_ode(const Flow& flow, double x_enter, double x_exit,
                                    const OdeConfig& cfg = {},
                                    std::vector<TrajectoryPoint>* trace = nullptr);

PassageResult passage_time_quadrature(const VectorField1D& field, double r, Interval iv = {},
                                      const QuadratureConfig& cfg = {});

PassageResult passage_time_ode(const VectorField1D& field, double r, double x_enter,
                               double x_exit, const OdeConfig& cfg = {},
                               std::vector<TrajectoryPoint>* trace = nullptr);

// Exact passage times of the reference examples.
//   A1            r + sqrt(x) over [0, 1]:  2 + 2r ln r - 2r ln(1+r)
//   A2            r + x over [0, 1]:        ln(1 + 1/r)
//   A3            r + x^2 over [0, 1]:      atan(1/sqrt r) / sqrt r
//   NormalFormSym r + x^2 over [-1, 1]:     2 atan(1/sqrt r) / sqrt r
//   ParamProp1    R = 1/a^2, x^2 phase, [-1, 1]: 2 a atan(a), a = aux
enum class ClosedForm { A1, A2, A3, NormalFormSym, ParamProp1 };

double closed_form_passage(ClosedForm example, double r, std::optional<double> aux = {});

/// Limit r -> 0+ of the passage time of r + x^alpha over [0, 1]: 1/(1-alpha).
/// Throws DivergentLimit for alpha >= 1.
double limit_passage_alpha(double alpha);

}  // namespace ghost
