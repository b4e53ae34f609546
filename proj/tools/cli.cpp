#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ghost/error.hpp"
#include "ghost/fields.hpp"
#include "ghost/io.hpp"
#include "ghost/passage.hpp"
#include "ghost/pendulum.hpp"
#include "ghost/scaling.hpp"
#include "ghost/simd/kernels.hpp"

namespace ghost::cli {
namespace {

struct SweepOptions {
  double r_lo = 1e-8;
  double r_hi = 1e-3;
  int points = 25;
  std::string engine = "quadrature";
  std::string interval;
};

struct Options {
  SweepOptions sweep;
  std::string output;
  std::string phase;
  std::string param = "identity";
  std::string input;
  std::string alphas;
  double a = 1.0;
  double omega = 1.0;
  std::string mode = "bottleneck";
  int figure = 1;
  int curve_points = 201;
};

std::vector<double> parse_list(const std::string& text, std::string_view what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "bad value '" + cell + "' in " + std::string(what));
    }
    values.push_back(v);
  }
  return values;
}

Interval parse_interval(const std::string& text, Interval fallback) {
  if (text.empty()) return fallback;
  const auto v = parse_list(text, "--interval");
  if (v.size() != 2) throw Error(Errc::InvalidArgument, "--interval expects lo,hi");
  return Interval::make(v[0], v[1]);
}

unsigned thread_budget() {
  const char* env = std::getenv("GHOST_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0) throw Error(Errc::InvalidArgument, "GHOST_THREADS must be a count >= 0");
  return static_cast<unsigned>(n);
}

SweepSpec make_spec(const SweepOptions& o, Interval fallback) {
  SweepSpec spec;
  spec.r_lo = o.r_lo;
  spec.r_hi = o.r_hi;
  spec.points = o.points;
  spec.engine = parse_engine(o.engine);
  spec.interval = parse_interval(o.interval, fallback);
  spec.threads = thread_budget();
  spec.validate();
  return spec;
}

void add_sweep_options(CLI::App* cmd, SweepOptions& o, const std::string& interval_help) {
  cmd->add_option("--r-lo", o.r_lo, "Smallest r of the log grid")->capture_default_str();
  cmd->add_option("--r-hi", o.r_hi, "Largest r of the log grid")->capture_default_str();
  cmd->add_option("--points", o.points, "Grid points (>= 3)")->capture_default_str();
  cmd->add_option("--engine", o.engine, "quadrature | ode")->capture_default_str();
  cmd->add_option("--interval", o.interval, interval_help);
}

// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const VectorField1D field(parse_phase(o.phase), parse_param(o.param));
  if (!field.is_even()) {
    throw Error(Errc::InvalidArgument, "use the pendulum subcommand for pendulum:<a>");
  }
  const SweepSpec spec = make_spec(o.sweep, Interval{});
  err << "sweep " << to_string(field.phase()) << " / " << to_string(field.param()) << ", "
      << spec.points << " points, " << engine_name(spec.engine) << ", simd "
      << simd::isa_name(simd::active_isa()) << '\n';
  const auto samples = sweep(field, spec);
  Sink sink(o.output, out);
  write_samples_csv(sink.stream(), samples, spec.engine, to_string(field.phase()),
                    to_string(field.param()));
  return kOk;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<SampleRow> rows;
  if (o.input.empty() || o.input == "-") {
    rows = read_samples_csv(std::cin);
  } else {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw Error(Errc::InvalidArgument, "cannot read '" + o.input + "'");
    rows = read_samples_csv(in);
  }
  const ScalingFit fit = classify(samples_of(rows));
  Sink sink(o.output, out);
  sink.stream() << nlohmann::json(fit).dump() << '\n';
  return kOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  const auto alphas = parse_list(o.alphas, "--alphas");
  const SweepSpec spec = make_spec(o.sweep, Interval{});
  err << "scan over " << alphas.size() << " exponents, " << spec.points << " points each\n";
  const RegimeMap map = regime_scan(alphas, spec);
  Sink sink(o.output, out);
  sink.stream() << nlohmann::json(map).dump() << '\n';
  return kOk;
}

int cmd_pendulum(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string phase = to_string(PhaseFn{PendulumWave{o.a}});
  const SweepSpec spec = make_spec(o.sweep, pendulum::kBottleneck);
  const Engine engine = spec.engine;
  std::vector<ScalingSample> samples;
  if (o.mode == "sweep") {
    err << "pendulum sweep a = " << format_number(o.a) << ", r = omega - 1\n";
    samples = pendulum::bottleneck_sweep(o.a, spec, spec.interval);
  } else if (o.mode == "bottleneck" || o.mode == "period") {
    const auto p = pendulum::PendulumParams::make(o.a, o.omega);
    const PassageResult res = o.mode == "bottleneck"
                                  ? pendulum::bottleneck_time(p, spec.interval, engine, spec.quadrature, spec.ode)
                                  : pendulum::rotation_period(p, spec.quadrature);
    err << "pendulum " << o.mode << ": " << nlohmann::json(res).dump() << '\n';
    samples.push_back({o.omega - 1.0, res.time});
  } else {
    throw Error(Errc::InvalidArgument, "--mode must be bottleneck, period or sweep");
  }
  Sink sink(o.output, out);
  write_samples_csv(sink.stream(), samples, o.mode == "period" ? Engine::Quadrature : engine, phase,
                    "identity");
  return kOk;
}

std::string order_label(const ScalingFit& fit) {
  switch (fit.model) {
    case ScalingModel::Constant: return "constant";
    case ScalingModel::Logarithmic: return "logarithmic";
    case ScalingModel::PowerLaw:
      if (std::abs(fit.exponent - 0.5) <= 0.02) return "square-root";
      return "power(" + format_number(std::round(fit.exponent * 1e4) / 1e4) + ")";
  }
  return "?";
}

// `t_last` is the passage time at the smallest r of the sweep.
std::string law_label(const ScalingFit& fit, double t_last) {
  char buf[64];
  switch (fit.model) {
    case ScalingModel::Constant:
      std::snprintf(buf, sizeof buf, "t = %.4g", t_last);
      return buf;
    case ScalingModel::Logarithmic: return "t ~ ln(r)";
    case ScalingModel::PowerLaw:
      if (std::abs(fit.exponent - 0.5) <= 0.02) return "t ~ 1/sqrt(r)";
      std::snprintf(buf, sizeof buf, "t ~ r^-%.4f", fit.exponent);
      return buf;
  }
  return "?";
}

int cmd_table(const Options& o, std::ostream& out, std::ostream&) {
  SweepSpec spec = make_spec(o.sweep, Interval{0.0, 1.0});
  struct Row {
    const char* label;
    double alpha;
  };
  const Row rows[] = {{"sqrt(x)", 0.5}, {"x", 1.0}, {"x^2", 2.0}};
  Sink sink(o.output, out);
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-16s %-14s %s\n", "Function", "Scaling law",
                "Order", "Fit");
  sink.stream() << line;
  for (const Row& row : rows) {
    const VectorField1D field(PowerPhase{row.alpha}, Identity{});
    const auto samples = sweep(field, spec);
    const ScalingFit fit = classify(samples);
    std::string detail;
    if (fit.model == ScalingModel::PowerLaw) detail = "exponent " + format_number(fit.exponent);
    else if (fit.model == ScalingModel::Logarithmic) detail = "slope " + format_number(fit.prefactor);
    else detail = "mean " + format_number(fit.prefactor);
    std::snprintf(line, sizeof line, "%-10s %-16s %-14s %s\n", row.label, law_label(fit, samples.back().t).c_str(),
                  order_label(fit).c_str(), detail.c_str());
    sink.stream() << line;
  }
  return kOk;
}

int cmd_curves(const Options& o, std::ostream& out, std::ostream&) {
  if (o.figure != 1 && o.figure != 3) throw Error(Errc::InvalidArgument, "--figure must be 1 or 3");
  if (o.curve_points < 2) throw Error(Errc::InvalidArgument, "--points must be >= 2");
  const double extent = o.figure == 1 ? 1.0 : std::numbers::pi;
  std::vector<double> x(static_cast<std::size_t>(o.curve_points));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = -extent + 2.0 * extent * static_cast<double>(i) / static_cast<double>(x.size() - 1);
  }
  x.front() = -extent;
  x.back() = extent;

  Sink sink(o.output, out);
  std::ostream& s = sink.stream();
  s << "figure,series,a,x,value\n";
  std::vector<double> values(x.size());
  auto emit = [&](const std::string& series, double a) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      s << o.figure << ',' << series << ',' << format_number(a) << ',' << format_scientific(x[i]) << ','
        << format_scientific(values[i]) << '\n';
    }
  };
  for (double a : {0.5, 1.0, 2.0}) {
    const auto plan = simd::PowerPlan::for_exponent(a);
    if (o.figure == 1) {
      for (double r : {-0.5, 0.0, 0.5}) {
        simd::evaluate({simd::RateShape::Even, r, plan}, simd::Output::Rate, x, values);
        emit("r=" + format_number(r), a);
      }
    } else {
      // Right-hand side omega - F_a at omega = 1, and the 1 + F_a curve.
      simd::evaluate({simd::RateShape::PendulumWave, 1.0, plan}, simd::Output::Rate, x, values);
      emit("1-F_a", a);
      for (std::size_t i = 0; i < x.size(); ++i) values[i] = 1.0 + simd::wave_value(x[i], plan);
      emit("1+F_a", a);
    }
  }
  return kOk;
}

// key=value lines become --key value right after the subcommand, so flags
// given on the command line (which come later) win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read config '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "config line without '=': " + line);
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    injected.push_back("--" + strip(line.substr(0, eq)) + "=" + strip(line.substr(eq + 1)));
  }
  const auto at = args.empty() ? args.end() : args.begin() + 1;
  args.insert(at, injected.begin(), injected.end());
  return args;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Passage-time scaling near saddle-node bifurcations", "ghost"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* sweep_cmd = app.add_subcommand("sweep", "Passage times on a log-spaced r grid (CSV)");
  sweep_cmd->add_option("--phase", o.phase, "quadratic | power:<alpha> | monomial:<m>")->required();
  sweep_cmd->add_option("--param", o.param, "identity | evenpower:<k> | invsqexp")->capture_default_str();
  add_sweep_options(sweep_cmd, o.sweep, "Transit interval lo,hi (default -1,1)");
  sweep_cmd->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* fit_cmd = app.add_subcommand("fit", "Classify the scaling law of a sweep CSV (JSON)");
  fit_cmd->add_option("input", o.input, "Sweep CSV ('-' for stdin)");
  fit_cmd->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* scan_cmd = app.add_subcommand("scan", "Scaling class for each exponent of r + |x|^alpha (JSON)");
  scan_cmd->add_option("--alphas", o.alphas, "Comma-separated increasing exponents")->required();
  add_sweep_options(scan_cmd, o.sweep, "Transit interval lo,hi (default -1,1)");
  scan_cmd->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* pend_cmd = app.add_subcommand(
      "pendulum",
      "Overdamped pendulum theta' = omega - F_a(theta) (CSV, r = omega - 1). The scaling exponent "
      "does not depend on the bottleneck interval; the prefactor does.");
  pend_cmd->add_option("--a", o.a, "Wave exponent a > 0")->required();
  pend_cmd->add_option("--omega", o.omega, "Drive omega (bottleneck/period modes)");
  pend_cmd->add_option("--mode", o.mode, "bottleneck | period | sweep")->capture_default_str();
  add_sweep_options(pend_cmd, o.sweep, "Bottleneck interval lo,hi within [0, pi] (default pi/4,3pi/4)");
  pend_cmd->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* table_cmd = app.add_subcommand("table", "Recompute the three reference scaling classes");
  add_sweep_options(table_cmd, o.sweep, "Transit interval lo,hi (default 0,1)");
  table_cmd->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* curves_cmd = app.add_subcommand("curves", "Field values for plotting (CSV)");
  curves_cmd->add_option("--figure", o.figure, "1: r + |x|^a;  3: 1 -+ F_a(theta)")->capture_default_str();
  curves_cmd->add_option("--points", o.curve_points, "Grid points")->capture_default_str();
  curves_cmd->add_option("--output,-o", o.output, "Output file (default stdout)");

  try {
    args = expand_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(o, out, err);
    if (*fit_cmd) return cmd_fit(o, out, err);
    if (*scan_cmd) return cmd_scan(o, out, err);
    if (*pend_cmd) return cmd_pendulum(o, out, err);
    if (*table_cmd) return cmd_table(o, out, err);
    if (*curves_cmd) return cmd_curves(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_usage_error() ? kUsage : kComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputation;
  }
  return kUsage;
}

}  // namespace ghost::cli
