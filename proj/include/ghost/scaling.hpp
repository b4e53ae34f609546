#pragma once

// Sweeps r -> 0+, fits the scaling class of t(r) and predicts it from the
// family's exponents.

#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "ghost/fields.hpp"
#include "ghost/passage.hpp"

namespace ghost {

struct SweepSpec {
  double r_lo = 1e-8;
  double r_hi = 1e-3;
  int points = 25;
  Engine engine = Engine::Quadrature;
  Interval interval{};
  QuadratureConfig quadrature{};
  OdeConfig ode{};
  /// Worker threads for independent grid points; 0 means hardware concurrency.
  unsigned threads = 1;

  /// Throws InvalidArgument unless 0 < r_lo < r_hi and points >= 3.
  void validate() const;
  /// Log-spaced grid from r_hi down to r_lo (both included).
  std::vector<double> grid() const;
};

struct ScalingSample {
  double r;
  double t;
};

enum class ScalingModel { Constant, Logarithmic, PowerLaw };

std::string_view model_name(ScalingModel model) noexcept;

/// Fields not used by `model` are NaN.
///   PowerLaw:    t ~ prefactor * r^(-exponent)
///   Logarithmic: t ~ prefactor * ln(1/r) + intercept
///   Constant:    t ~ prefactor
/// rmse is relative to the data scale for every model.
struct ScalingFit {
  ScalingModel model = ScalingModel::Constant;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  double prefactor = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double rmse = 0.0;
  double r_squared = 0.0;
};

struct ModelCandidates {
  ScalingFit constant;
  ScalingFit logarithmic;
  ScalingFit power;
  /// Growth of t per unit ln(1/r) over the small-r half of the data divided
  /// by the same over the large-r half. ~1 for a logarithm, < 1 when t
  /// saturates, > 1 for a power law.
  double growth_ratio;
};

struct SelectionThresholds {
  double constant_band = 0.01;
  double log_margin = 0.05;
  double saturation_ratio = 0.5;
};

/// Evaluates one grid point. Used by sweep() and by the pendulum study.
using PassageProbe = std::function<double(double r)>;

std::vector<ScalingSample> sweep(const VectorField1D& field, const SweepSpec& spec);
std::vector<ScalingSample> sweep_probe(const PassageProbe& probe, const SweepSpec& spec);

ScalingFit fit_power(const std::vector<ScalingSample>& samples);
ScalingFit fit_log(const std::vector<ScalingSample>& samples);
ScalingFit fit_constant(const std::vector<ScalingSample>& samples);
double growth_ratio(const std::vector<ScalingSample>& samples);

ModelCandidates fit_candidates(const std::vector<ScalingSample>& samples);
ScalingFit select_model(const ModelCandidates& candidates, const SelectionThresholds& th = {});
ScalingFit classify(const std::vector<ScalingSample>& samples, const SelectionThresholds& th = {});

enum class PredictedClass { Constant, Logarithmic, PowerLaw, NonPower };

std::string_view predicted_name(PredictedClass cls) noexcept;

/// Asymptotic law of the passage time as r -> 0+.
///   Constant:    t -> value
///   Logarithmic: t ~ slope * ln(1/r)
///   PowerLaw:    t ~ prefactor * r^(-exponent)
///   NonPower:    t ~ prefactor * exp(exponent / r)
/// `value`, `slope`, and `prefactor` are all carried in `coefficient`.
struct Prediction {
  PredictedClass cls = PredictedClass::Constant;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  double coefficient = std::numeric_limits<double>::quiet_NaN();
};

Prediction predicted_law(const VectorField1D& field, Interval iv = {});

struct RegimeEntry {
  double alpha;
  ScalingFit fit;
};

struct RegimeMap {
  std::vector<RegimeEntry> entries;
};

RegimeMap regime_scan(const std::vector<double>& alphas, const SweepSpec& spec,
                      const SelectionThresholds& th = {});

}  // namespace ghost
