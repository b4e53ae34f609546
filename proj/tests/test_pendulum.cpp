#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ghost/error.hpp"
#include "ghost/pendulum.hpp"
#include "oracle.hpp"

using namespace ghost;
using namespace ghost::pendulum;

namespace {

constexpr double pi = std::numbers::pi;

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ghost::Error");
  return Errc::InvalidArgument;
}

double period_oracle(double a, double omega) {
  return oracle::integrate([=](double t) { return 1.0 / (omega - oracle::wave(a, t)); },
                           {-pi, -pi / 2, 0.0, pi / 2, pi});
}

}  // namespace

TEST_CASE("wave examples") {
  for (double a : {0.3, 0.5, 1.0, 2.0, 3.0}) {
    CHECK(wave_F(a, pi / 2) == 1.0);
    CHECK(wave_F(a, -pi / 2) == -1.0);
    CHECK(wave_F(a, 0.0) == 0.0);
    CHECK(wave_F(a, pi) == 0.0);
    CHECK(wave_F(a, -pi) == 0.0);
  }
  CHECK(wave_F(1.0, 0.0) == 0.0);
  CHECK(wave_F(2.0, pi / 4) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(code_of([] { wave_F(2.0, 3.2); }) == Errc::DomainError);
  CHECK(code_of([] { wave_F(0.0, 1.0); }) == Errc::InvalidArgument);
}

TEST_CASE("wave matches an independent transcription") {
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    for (int i = 0; i <= 400; ++i) {
      const double t = -pi + 2.0 * pi * i / 400.0;
      CHECK(std::abs(wave_F(a, t) - oracle::wave(a, t)) <= 1e-15);
    }
  }
}

TEST_CASE("wave continuity, range and odd symmetry") {
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    for (double b : {-pi / 2, 0.0, pi / 2}) {
      const double left = wave_F(a, std::nextafter(b, -10.0));
      const double right = wave_F(a, std::nextafter(b, 10.0));
      CHECK(std::abs(left - right) <= 1e-14 + (a < 1.0 ? 1e-7 : 0.0));
      CHECK(std::abs(left - wave_F(a, b)) <= 1e-14 + (a < 1.0 ? 1e-7 : 0.0));
    }
    CHECK(wave_F(a, -pi) == wave_F(a, pi));
    double hi = -2.0;
    double lo = 2.0;
    for (int i = 1; i < 1000; ++i) {
      const double t = pi * i / 1000.0;
      CHECK(std::abs(wave_F(a, -t) + wave_F(a, t)) <= 1e-14);
      hi = std::max(hi, wave_F(a, t));
      lo = std::min(lo, wave_F(a, -t));
    }
    CHECK(hi <= 1.0);
    CHECK(lo >= -1.0);
  }
}

TEST_CASE("elongation") {
  for (double a : {0.5, 1.0, 2.0, 3.0}) CHECK(elongation_L(a, pi / 2) == 1.0);
  CHECK(code_of([] { elongation_L(0.5, 0.0); }) == Errc::SingularPoint);
  CHECK(code_of([] { elongation_L(2.0, pi); }) == Errc::SingularPoint);
  CHECK(code_of([] { elongation_L(2.0, -pi); }) == Errc::SingularPoint);

  const ElongationPolicy cap{100.0, SingularHandling::Cap};
  CHECK(elongation_L(0.5, 0.0, cap) == 100.0);
  CHECK(elongation_L(0.5, pi, cap) == 100.0);
  for (double a : {0.5, 1.0, 2.0}) {
    for (int i = -50; i <= 50; ++i) {
      const double t = std::clamp(pi * i / 50.0, -pi, pi);
      CHECK(elongation_L(a, t, cap) <= 100.0);
    }
  }
  // 0/0 with a finite one-sided limit 2a/pi at the origin.
  for (double a : {0.5, 2.0}) {
    CHECK(elongation_L(a, 1e-9) == doctest::Approx(2.0 * a / pi).epsilon(1e-6));
  }
  CHECK(code_of([] { elongation_L(1.0, 1.0, {0.5, SingularHandling::Cap}); }) == Errc::InvalidArgument);
}

TEST_CASE("pendulum rhs") {
  CHECK(pendulum_rhs({2.0, 1.0}, pi / 2) == 0.0);
  CHECK(pendulum_rhs({2.0, 1.01}, pi / 2) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(pendulum_rhs({2.0, 1.0}, pi / 4) == doctest::Approx(0.25).epsilon(1e-14));
  const Flow flow = make_flow({3.0, 1.2});
  for (int i = 0; i <= 64; ++i) {
    const double t = -pi + 2.0 * pi * i / 64.0;
    CHECK(flow.rate(t) == doctest::Approx(pendulum_rhs({3.0, 1.2}, t)).epsilon(1e-14));
  }
  CHECK(code_of([] { PendulumParams::make(-1.0, 1.0); }) == Errc::InvalidArgument);
}

TEST_CASE("bottleneck spot values") {
  const auto t2 = bottleneck_time({2.0, 1.01});
  CHECK(oracle::rel(t2.time, 10.0 * pi * std::atan(5.0)) <= 1e-10);
  const auto t1 = bottleneck_time({1.0, 1.01});
  CHECK(oracle::rel(t1.time, pi * std::log(51.0)) <= 1e-10);
  const auto ode = bottleneck_time({2.0, 1.01}, kBottleneck, Engine::Ode);
  CHECK(oracle::rel(ode.time, t2.time) <= 1e-4);

  CHECK(code_of([] { bottleneck_time({2.0, 1.0}); }) == Errc::NoTransit);
  CHECK(code_of([] { bottleneck_time({2.0, 0.5}); }) == Errc::NoTransit);
  CHECK(code_of([] { bottleneck_time({2.0, 1.1}, {-0.5, 1.0}); }) == Errc::InvalidArgument);
}

TEST_CASE("bounded bottleneck for a < 1") {
  // At omega = 1 the integrand ((2/pi)|t - pi/2|)^{-1/2} is integrable.
  const double limit = 2.0 * oracle::integrate(
                                 [](double t) { return 1.0 / (1.0 - oracle::wave(0.5, t)); }, {pi / 4, pi / 2});
  // 1 - F cancels near pi/2, so the oracle only carries ~8 digits here.
  CHECK(oracle::rel(limit, pi * std::sqrt(2.0)) < 1e-6);
  const double near = bottleneck_time({0.5, 1.0 + 1e-8}).time;
  CHECK(near < limit);
  CHECK(oracle::rel(near, limit) <= 0.01);
}

TEST_CASE("rotation period") {
  const auto p = rotation_period({2.0, 2.0});
  CHECK(oracle::rel(p.time, period_oracle(2.0, 2.0)) <= 1e-8);
  CHECK(oracle::rel(p.time, 3.66174979835507223) <= 1e-10);
  for (double a : {0.5, 1.0, 3.0}) {
    CHECK(oracle::rel(rotation_period({a, 1.5}).time, period_oracle(a, 1.5)) <= 1e-8);
  }
  CHECK(code_of([] { rotation_period({2.0, 1.0}); }) == Errc::NoTransit);

  // The bottleneck carries the divergence; the remainder converges.
  std::vector<double> rest;
  for (double r : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const PendulumParams q{1.0, 1.0 + r};
    rest.push_back(rotation_period(q).time - bottleneck_time(q).time);
  }
  for (double d : rest) {
    CHECK(std::isfinite(d));
    CHECK(d > 0.0);
    CHECK(d < 10.0);
  }
  CHECK(std::abs(rest[3] - rest[2]) < 1e-3);
}

TEST_CASE("scaling transfers to the pendulum with r = omega - 1") {
  SweepSpec spec;
  spec.threads = 0;
  const auto half = classify(bottleneck_sweep(0.5, spec));
  CHECK(half.model == ScalingModel::Constant);
  const auto one = classify(bottleneck_sweep(1.0, spec));
  CHECK(one.model == ScalingModel::Logarithmic);
  for (double a : {2.0, 3.0}) {
    const auto fit = classify(bottleneck_sweep(a, spec));
    CHECK(fit.model == ScalingModel::PowerLaw);
    CHECK(std::abs(fit.exponent - (a - 1.0) / a) <= 0.02);
  }
}
