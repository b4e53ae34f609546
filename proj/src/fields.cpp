#include "ghost/fields.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

#include "ghost/error.hpp"

namespace ghost {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(Errc::InvalidArgument, "bad number for " + std::string(what) + ": '" +
                                           std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(Errc::InvalidArgument, "bad integer for " + std::string(what) + ": '" +
                                           std::string(text) + "'");
  }
  return value;
}

// Splits "name:value"; value is empty when there is no colon.
std::pair<std::string_view, std::string_view> split_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace

PhaseFn make_phase(PhaseFn phase) {
  std::visit(Overloaded{
                 [](const Quadratic&) {},
                 [](const PowerPhase& p) {
                   if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
                     throw Error(Errc::InvalidArgument, "power phase needs alpha > 0");
                   }
                 },
                 [](const MonomialPhase& p) {
                   if (p.m < 2) throw Error(Errc::InvalidArgument, "monomial phase needs m >= 2");
                 },
                 [](const PendulumWave& p) {
                   if (!(p.a > 0.0) || !std::isfinite(p.a)) {
                     throw Error(Errc::InvalidArgument, "pendulum wave needs a > 0");
                   }
                 },
             },
             phase);
  return phase;
}

ParamMap make_param(ParamMap param) {
  if (const auto* p = std::get_if<EvenPower>(&param); p && p->k < 1) {
    throw Error(Errc::InvalidArgument, "evenpower needs k >= 1");
  }
  return param;
}

VectorField1D::VectorField1D(PhaseFn phase, ParamMap param)
    : phase_(make_phase(std::move(phase))), param_(make_param(std::move(param))) {}

double VectorField1D::param_value(double r) const {
  return std::visit(Overloaded{
                        [r](const Identity&) { return r; },
                        [r](const EvenPower& p) {
                          return simd::power_abs(r, simd::PowerPlan::for_exponent(2.0 * p.k));
                        },
                        [r](const InverseSquareExp&) { return r > 0.0 ? std::exp(-2.0 / r) : 0.0; },
                    },
                    param_);
}

double VectorField1D::phase_value(double x) const {
  if (const auto* w = std::get_if<PendulumWave>(&phase_)) {
    if (!(std::abs(x) <= std::numbers::pi)) {
      throw Error(Errc::DomainError, "pendulum wave is defined on [-pi, pi]");
    }
    return simd::wave_value(x, simd::PowerPlan::for_exponent(w->a));
  }
  return simd::power_abs(x, simd::PowerPlan::for_exponent(phase_exponent()));
}

bool VectorField1D::is_even() const noexcept {
  return !std::holds_alternative<PendulumWave>(phase_);
}

double VectorField1D::phase_exponent() const {
  return std::visit(Overloaded{
                        [](const Quadratic&) { return 2.0; },
                        [](const PowerPhase& p) { return p.alpha; },
                        [](const MonomialPhase& p) { return static_cast<double>(p.m); },
                        [](const PendulumWave& p) { return p.a; },
                    },
                    phase_);
}

simd::RateKernel VectorField1D::kernel(double r) const {
  if (!is_even()) {
    throw Error(Errc::UnknownFamily,
                "pendulum wave fields are evaluated through the pendulum module");
  }
  simd::RateKernel k;
  k.shape = simd::RateShape::Even;
  k.offset = param_value(r);
  k.power = simd::PowerPlan::for_exponent(phase_exponent());
  return k;
}

double eval_field(const VectorField1D& field, double r, double x) { return field.rate(r, x); }

std::vector<double> fixed_points(const VectorField1D& field, double r, double search_box) {
  if (!field.is_even()) {
    throw Error(Errc::UnknownFamily, "fixed points of the pendulum wave live in the pendulum module");
  }
  if (!std::isfinite(r)) throw Error(Errc::InvalidArgument, "r must be finite");
  if (!(search_box > 0.0) || !std::isfinite(search_box)) {
    throw Error(Errc::InvalidArgument, "search box must be positive and finite");
  }
  const double big_r = field.param_value(r);
  if (big_r > 0.0) return {};
  if (big_r == 0.0) return {0.0};

  const double p = field.phase_exponent();
  const double tol = kRootTolerance * std::max(1.0, std::abs(r));
  double x = std::pow(-big_r, 1.0 / p);
  for (int it = 0; it < 8 && std::abs(field.rate(r, x)) > tol; ++it) {
    x -= field.rate(r, x) / (p * std::pow(x, p - 1.0));
  }
  if (std::abs(field.rate(r, x)) > tol) {
    throw Error(Errc::ToleranceNotMet, "fixed point residual above root tolerance");
  }
  if (x > search_box) return {};
  return {-x, x};
}

BifurcationKind classify_bifurcation(const VectorField1D& field) noexcept {
  if (std::holds_alternative<Identity>(field.param())) return BifurcationKind::SaddleNode;
  return BifurcationKind::TopologicallyDegenerate;
}

std::string_view bifurcation_name(BifurcationKind kind) noexcept {
  return kind == BifurcationKind::SaddleNode ? "saddle-node" : "topologically-degenerate";
}

PhaseFn parse_phase(std::string_view text) {
  auto [name, value] = split_spec(text);
  if (name == "quadratic" && value.empty()) return Quadratic{};
  if (name == "power") return make_phase(PowerPhase{parse_real(value, "power")});
  if (name == "monomial") return make_phase(MonomialPhase{parse_int(value, "monomial")});
  if (name == "pendulum") return make_phase(PendulumWave{parse_real(value, "pendulum")});
  throw Error(Errc::InvalidArgument, "unknown phase spec '" + std::string(text) + "'");
}

ParamMap parse_param(std::string_view text) {
  auto [name, value] = split_spec(text);
  if (name == "identity" && value.empty()) return Identity{};
  if (name == "evenpower") return make_param(EvenPower{parse_int(value, "evenpower")});
  if (name == "invsqexp" && value.empty()) return InverseSquareExp{};
  throw Error(Errc::InvalidArgument, "unknown param spec '" + std::string(text) + "'");
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string to_string(const PhaseFn& phase) {
  return std::visit(Overloaded{
                        [](const Quadratic&) { return std::string("quadratic"); },
                        [](const PowerPhase& p) { return "power:" + format_number(p.alpha); },
                        [](const MonomialPhase& p) { return "monomial:" + std::to_string(p.m); },
                        [](const PendulumWave& p) { return "pendulum:" + format_number(p.a); },
                    },
                    phase);
}

std::string to_string(const ParamMap& param) {
  return std::visit(Overloaded{
                        [](const Identity&) { return std::string("identity"); },
                        [](const EvenPower& p) { return "evenpower:" + std::to_string(p.k); },
                        [](const InverseSquareExp&) { return std::string("invsqexp"); },
                    },
                    param);
}

}  // namespace ghost
