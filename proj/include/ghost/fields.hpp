#pragma once

// One-parameter families of scalar flows  x' = R(r) + F(x).

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ghost/simd/kernels.hpp"

namespace ghost {

// ---- phase functions F -----------------------------------------------------

struct Quadratic {};

/// F(x) = |x|^alpha, the even extension of x^alpha.
struct PowerPhase {
  double alpha;
};

/// F(x) = |x|^m.
struct MonomialPhase {
  int m;
};

/// F(t) = F_a(t), the piecewise power wave on [-pi, pi].
struct PendulumWave {
  double a;
};

using PhaseFn = std::variant<Quadratic, PowerPhase, MonomialPhase, PendulumWave>;

// ---- parameter maps R ------------------------------------------------------

struct Identity {};

/// R(r) = r^(2k).
struct EvenPower {
  int k;
};

/// R(r) = exp(-2/r) for r > 0, continued by 0 for r <= 0.
struct InverseSquareExp {};

using ParamMap = std::variant<Identity, EvenPower, InverseSquareExp>;

enum class BifurcationKind { SaddleNode, TopologicallyDegenerate };

/// Validates variant parameters; throws Error(InvalidArgument).
PhaseFn make_phase(PhaseFn phase);
ParamMap make_param(ParamMap param);

class VectorField1D {
 public:
  VectorField1D(PhaseFn phase, ParamMap param);

  const PhaseFn& phase() const noexcept { return phase_; }
  const ParamMap& param() const noexcept { return param_; }

  double param_value(double r) const;
  double phase_value(double x) const;
  double rate(double r, double x) const { return param_value(r) + phase_value(x); }

  /// Kernel computing x -> rate(r, x) for fixed r.
  simd::RateKernel kernel(double r) const;

  /// True for Quadratic, PowerPhase and MonomialPhase.
  bool is_even() const noexcept;

  /// Exponent of |x| in F for the even families.
  double phase_exponent() const;

 private:
  PhaseFn phase_;
  ParamMap param_;
};

double eval_field(const VectorField1D& field, double r, double x);

/// Roots of R(r) + F(x) in [-box, box], ascending.
std::vector<double> fixed_points(const VectorField1D& field, double r, double search_box);

BifurcationKind classify_bifurcation(const VectorField1D& field) noexcept;
std::string_view bifurcation_name(BifurcationKind kind) noexcept;

inline constexpr double kRootTolerance = 1e-12;

// ---- spec strings: quadratic | power:<a> | monomial:<m> | pendulum:<a>,
//      identity | evenpower:<k> | invsqexp ---------------------------------

PhaseFn parse_phase(std::string_view text);
ParamMap parse_param(std::string_view text);
std::string to_string(const PhaseFn& phase);
std::string to_string(const ParamMap& param);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace ghost
