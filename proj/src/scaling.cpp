#include "ghost/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include "ghost/error.hpp"

namespace ghost {
namespace {

void check_samples(const std::vector<ScalingSample>& samples) {
  if (samples.size() < 3) {
    throw Error(Errc::InsufficientData, "need at least 3 samples, got " + std::to_string(samples.size()));
  }
  for (const auto& s : samples) {
    if (!(s.r > 0.0) || !(s.t > 0.0) || !std::isfinite(s.r) || !std::isfinite(s.t)) {
      throw Error(Errc::InvalidArgument, "samples must have finite positive r and t");
    }
  }
}

struct LineFit {
  double slope;
  double intercept;
  double ss_res;
  double ss_tot;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(Errc::DegenerateData, "regressor has zero variance");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    ss_res += e * e;
  }
  return {slope, intercept, ss_res, syy};
}

double r_squared(double ss_res, double ss_tot) {
  if (!(ss_tot > 0.0)) return 1.0;
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

double mean_t(const std::vector<ScalingSample>& samples) {
  double m = 0.0;
  for (const auto& s : samples) m += s.t;
  return m / static_cast<double>(samples.size());
}

}  // namespace

void SweepSpec::validate() const {
  if (!(r_lo > 0.0) || !std::isfinite(r_lo) || !(r_hi > r_lo) || !std::isfinite(r_hi)) {
    throw Error(Errc::InvalidArgument, "sweep needs 0 < r_lo < r_hi");
  }
  if (points < 3) throw Error(Errc::InvalidArgument, "sweep needs at least 3 points");
  Interval::make(interval.lo, interval.hi);
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> r(static_cast<std::size_t>(points));
  const double top = std::log(r_hi);
  const double span = std::log(r_lo) - top;
  for (int i = 0; i < points; ++i) {
    r[static_cast<std::size_t>(i)] = std::exp(top + span * static_cast<double>(i) / (points - 1));
  }
  r.front() = r_hi;
  r.back() = r_lo;
  return r;
}

std::string_view model_name(ScalingModel model) noexcept {
  switch (model) {
    case ScalingModel::Constant: return "constant";
    case ScalingModel::Logarithmic: return "logarithmic";
    case ScalingModel::PowerLaw: return "power";
  }
  return "constant";
}

std::vector<ScalingSample> sweep_probe(const PassageProbe& probe, const SweepSpec& spec) {
  const std::vector<double> grid = spec.grid();
  std::vector<ScalingSample> out(grid.size());

  // The failure reported is the one at the smallest grid index, so a parallel
  // run fails exactly like a sequential one.
  std::mutex failure_mutex;
  std::optional<std::size_t> failed_at;
  std::exception_ptr failure;

  auto run_point = [&](std::size_t i) {
    try {
      out[i] = {grid[i], probe(grid[i])};
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failed_at || i < *failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  };

  unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size() && !failed_at; ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) run_point(i);
      });
    }
  }

  if (failed_at) {
    const std::string where = "r = " + format_number(grid[*failed_at]) + ": ";
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  return out;
}

std::vector<ScalingSample> sweep(const VectorField1D& field, const SweepSpec& spec) {
  spec.validate();
  if (spec.engine == Engine::Ode) {
    return sweep_probe(
        [&](double r) {
          return passage_time_ode(field, r, spec.interval.lo, spec.interval.hi, spec.ode).time;
        },
        spec);
  }
  if (spec.engine != Engine::Quadrature) {
    throw Error(Errc::InvalidArgument, "sweeps run the quadrature or ODE engine");
  }
  return sweep_probe(
      [&](double r) { return passage_time_quadrature(field, r, spec.interval, spec.quadrature).time; },
      spec);
}

ScalingFit fit_power(const std::vector<ScalingSample>& samples) {
  check_samples(samples);
  std::vector<double> x, y;
  for (const auto& s : samples) {
    x.push_back(std::log(s.r));
    y.push_back(std::log(s.t));
  }
  const LineFit line = least_squares(x, y);
  ScalingFit fit;
  fit.model = ScalingModel::PowerLaw;
  fit.exponent = -line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.rmse = std::sqrt(line.ss_res / static_cast<double>(samples.size()));
  fit.r_squared = r_squared(line.ss_res, line.ss_tot);
  return fit;
}

ScalingFit fit_log(const std::vector<ScalingSample>& samples) {
  check_samples(samples);
  std::vector<double> x, y;
  for (const auto& s : samples) {
    x.push_back(-std::log(s.r));
    y.push_back(s.t);
  }
  const LineFit line = least_squares(x, y);
  ScalingFit fit;
  fit.model = ScalingModel::Logarithmic;
  fit.prefactor = line.slope;
  fit.intercept = line.intercept;
  fit.rmse = std::sqrt(line.ss_res / static_cast<double>(samples.size())) / mean_t(samples);
  fit.r_squared = r_squared(line.ss_res, line.ss_tot);
  return fit;
}

ScalingFit fit_constant(const std::vector<ScalingSample>& samples) {
  check_samples(samples);
  const double mean = mean_t(samples);
  double ss = 0.0;
  for (const auto& s : samples) ss += (s.t - mean) * (s.t - mean);
  ScalingFit fit;
  fit.model = ScalingModel::Constant;
  fit.prefactor = mean;
  fit.rmse = std::sqrt(ss / static_cast<double>(samples.size())) / mean;
  // The constant model explains none of the variance unless there is none.
  fit.r_squared = ss > 0.0 ? 0.0 : 1.0;
  return fit;
}

double growth_ratio(const std::vector<ScalingSample>& samples) {
  check_samples(samples);
  std::vector<ScalingSample> s = samples;
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.r > b.r; });
  const std::size_t last = s.size() - 1;
  const std::size_t mid = last / 2;
  const double x0 = -std::log(s[0].r), xm = -std::log(s[mid].r), xl = -std::log(s[last].r);
  if (!(xm > x0) || !(xl > xm)) throw Error(Errc::DegenerateData, "repeated r values");
  const double early = (s[mid].t - s[0].t) / (xm - x0);
  const double late = (s[last].t - s[mid].t) / (xl - xm);
  if (early > 0.0) return late / early;
  return late > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

ModelCandidates fit_candidates(const std::vector<ScalingSample>& samples) {
  return {fit_constant(samples), fit_log(samples), fit_power(samples), growth_ratio(samples)};
}

ScalingFit select_model(const ModelCandidates& c, const SelectionThresholds& th) {
  if (c.constant.rmse <= th.constant_band) return c.constant;
  if (c.growth_ratio < th.saturation_ratio) return c.constant;
  if (c.logarithmic.rmse <= (1.0 + th.log_margin) * c.power.rmse) return c.logarithmic;
  return c.power;
}

ScalingFit classify(const std::vector<ScalingSample>& samples, const SelectionThresholds& th) {
  return select_model(fit_candidates(samples), th);
}

std::string_view predicted_name(PredictedClass cls) noexcept {
  switch (cls) {
    case PredictedClass::Constant: return "constant";
    case PredictedClass::Logarithmic: return "logarithmic";
    case PredictedClass::PowerLaw: return "power";
    case PredictedClass::NonPower: return "non-power";
  }
  return "constant";
}

Prediction predicted_law(const VectorField1D& field, Interval iv) {
  if (!field.is_even()) {
    throw Error(Errc::UnknownFamily, "no scaling prediction for " + to_string(field.phase()));
  }
  iv = Interval::make(iv.lo, iv.hi);
  if (iv.lo > 0.0 || iv.hi < 0.0) {
    throw Error(Errc::InvalidArgument, "interval does not contain the bottleneck at x = 0");
  }
  const double sides = (iv.lo < 0.0 ? 1.0 : 0.0) + (iv.hi > 0.0 ? 1.0 : 0.0);
  const double p = field.phase_exponent();
  const auto& param = field.param();

  if (p < 1.0) {
    const double reach = std::pow(-iv.lo, 1.0 - p) + std::pow(iv.hi, 1.0 - p);
    return {PredictedClass::Constant, std::numeric_limits<double>::quiet_NaN(),
            limit_passage_alpha(p) * reach};
  }

  // Leading behaviour in R = R(r) -> 0+: ln(1/R) per side for p = 1, and
  // R^(-(p-1)/p) * pi / (p sin(pi/p)) per side for p > 1.
  if (p == 1.0) {
    if (std::holds_alternative<Identity>(param)) return {PredictedClass::Logarithmic, 1.0, sides};
    if (const auto* e = std::get_if<EvenPower>(&param)) {
      return {PredictedClass::Logarithmic, 1.0, sides * 2.0 * e->k};
    }
    return {PredictedClass::PowerLaw, 1.0, sides * 2.0};
  }
  const double q = (p - 1.0) / p;
  const double coefficient = sides * std::numbers::pi / (p * std::sin(std::numbers::pi / p));
  if (std::holds_alternative<Identity>(param)) return {PredictedClass::PowerLaw, q, coefficient};
  if (const auto* e = std::get_if<EvenPower>(&param)) {
    return {PredictedClass::PowerLaw, 2.0 * e->k * q, coefficient};
  }
  return {PredictedClass::NonPower, 2.0 * q, coefficient};
}

RegimeMap regime_scan(const std::vector<double>& alphas, const SweepSpec& spec,
                      const SelectionThresholds& th) {
  spec.validate();
  if (alphas.empty()) throw Error(Errc::InvalidArgument, "regime scan needs at least one alpha");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw Error(Errc::InvalidArgument, "alphas must be positive");
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw Error(Errc::InvalidArgument, "alphas must be strictly increasing");
    }
  }
  RegimeMap map;
  for (double alpha : alphas) {
    const VectorField1D field(PowerPhase{alpha}, Identity{});
    map.entries.push_back({alpha, classify(sweep(field, spec), th)});
  }
  return map;
}

}  // namespace ghost
