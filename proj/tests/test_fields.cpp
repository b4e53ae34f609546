#include <doctest.h>

#include <cmath>
#include <random>

#include "ghost/error.hpp"
#include "ghost/fields.hpp"
#include "oracle.hpp"

using namespace ghost;

TEST_CASE("eval_field examples") {
  CHECK(eval_field({Quadratic{}, Identity{}}, -0.25, 0.5) == 0.0);
  CHECK(eval_field({PowerPhase{0.5}, Identity{}}, 0.1, -0.04) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(eval_field({MonomialPhase{4}, Identity{}}, 0.0, 2.0) == 16.0);
}

TEST_CASE("rate is exactly R(r) + F(x) and vanishes at the bifurcation point") {
  const std::vector<VectorField1D> fields{
      {Quadratic{}, Identity{}},       {PowerPhase{0.5}, EvenPower{2}}, {PowerPhase{1.7}, InverseSquareExp{}},
      {MonomialPhase{6}, Identity{}},  {Quadratic{}, EvenPower{1}},
  };
  for (const auto& f : fields) {
    CHECK(f.rate(0.0, 0.0) == 0.0);
    for (double r : {-0.3, 0.0, 0.2}) {
      for (double x : {-0.7, 0.0, 0.4}) CHECK(f.rate(r, x) == f.param_value(r) + f.phase_value(x));
    }
  }
}

TEST_CASE("parameter maps") {
  const VectorField1D even({Quadratic{}, EvenPower{2}});
  CHECK(even.param_value(0.1) == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK(even.param_value(-0.1) == even.param_value(0.1));
  const VectorField1D expo({Quadratic{}, InverseSquareExp{}});
  CHECK(expo.param_value(0.0) == 0.0);
  CHECK(expo.param_value(-1.0) == 0.0);
  CHECK(expo.param_value(0.5) == doctest::Approx(std::exp(-4.0)));
  CHECK(expo.param_value(1e-6) >= 0.0);
}

TEST_CASE("evenness holds exactly for symmetric phases") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  const std::vector<VectorField1D> fields{{Quadratic{}, Identity{}},
                                          {PowerPhase{0.5}, Identity{}},
                                          {PowerPhase{0.3}, Identity{}},
                                          {PowerPhase{2.5}, EvenPower{1}},
                                          {MonomialPhase{5}, Identity{}}};
  for (const auto& f : fields) {
    for (int i = 0; i < 200; ++i) {
      const double x = dist(rng);
      const double r = dist(rng) * 0.1;
      CHECK(eval_field(f, r, x) == eval_field(f, r, -x));
      if (x != 0.0) CHECK(f.phase_value(x) > 0.0);
    }
  }
}

TEST_CASE("fixed_points examples") {
  const VectorField1D normal({Quadratic{}, Identity{}});
  auto roots = fixed_points(normal, -0.25, 2.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-0.5));
  CHECK(roots[1] == doctest::Approx(0.5));
  CHECK(fixed_points(normal, 0.0, 2.0) == std::vector<double>{0.0});
  CHECK(fixed_points(normal, 0.25, 2.0).empty());

  roots = fixed_points({PowerPhase{0.5}, Identity{}}, -0.5, 2.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-0.25));
  CHECK(roots[1] == doctest::Approx(0.25));

  CHECK(fixed_points(normal, -4.0, 1.0).empty());  // roots at +-2 fall outside the box
}

TEST_CASE("fixed points: residual bound, count law, bisection cross-check") {
  const std::vector<VectorField1D> fields{{Quadratic{}, Identity{}},
                                          {PowerPhase{0.5}, Identity{}},
                                          {PowerPhase{1.3}, Identity{}},
                                          {MonomialPhase{4}, Identity{}},
                                          {PowerPhase{0.3}, Identity{}}};
  for (const auto& f : fields) {
    for (double r : {-1.0, -1e-3, 0.0, 1e-3, 1.0}) {
      const auto roots = fixed_points(f, r, 10.0);
      const std::size_t expected = r < 0.0 ? 2 : (r == 0.0 ? 1 : 0);
      CHECK(roots.size() == expected);
      for (double x : roots) CHECK(std::abs(eval_field(f, r, x)) <= kRootTolerance * std::max(1.0, std::abs(r)));
      if (expected == 2) {
        const double bisected = oracle::bisect([&](double x) { return eval_field(f, r, x); }, 0.0, 10.0);
        CHECK(roots[1] == doctest::Approx(bisected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("fixed_points errors") {
  CHECK_THROWS_AS(fixed_points({PendulumWave{2.0}, Identity{}}, -0.1, 1.0), Error);
  CHECK_THROWS_AS(fixed_points({Quadratic{}, Identity{}}, NAN, 1.0), Error);
  CHECK_THROWS_AS(fixed_points({Quadratic{}, Identity{}}, -0.1, 0.0), Error);
}

TEST_CASE("classify_bifurcation agrees with a sign sweep of R") {
  const std::vector<VectorField1D> fields{{Quadratic{}, Identity{}},
                                          {Quadratic{}, EvenPower{1}},
                                          {Quadratic{}, EvenPower{3}},
                                          {Quadratic{}, InverseSquareExp{}},
                                          {PowerPhase{0.5}, Identity{}}};
  for (const auto& f : fields) {
    bool changes_sign = false;
    for (double r : {1e-6, 1e-3, 1e-1}) {
      if (f.param_value(r) > 0.0 && f.param_value(-r) < 0.0) changes_sign = true;
    }
    const auto expected = changes_sign ? BifurcationKind::SaddleNode : BifurcationKind::TopologicallyDegenerate;
    CHECK(classify_bifurcation(f) == expected);
  }
  CHECK(classify_bifurcation({Quadratic{}, Identity{}}) == BifurcationKind::SaddleNode);
  CHECK(classify_bifurcation({Quadratic{}, EvenPower{1}}) == BifurcationKind::TopologicallyDegenerate);
  CHECK(classify_bifurcation({Quadratic{}, InverseSquareExp{}}) == BifurcationKind::TopologicallyDegenerate);
}

TEST_CASE("invalid parameters are rejected at construction") {
  CHECK_THROWS_AS(VectorField1D(PowerPhase{0.0}, Identity{}), Error);
  CHECK_THROWS_AS(VectorField1D(PowerPhase{-1.0}, Identity{}), Error);
  CHECK_THROWS_AS(VectorField1D(MonomialPhase{1}, Identity{}), Error);
  CHECK_THROWS_AS(VectorField1D(PendulumWave{0.0}, Identity{}), Error);
  CHECK_THROWS_AS(VectorField1D(Quadratic{}, EvenPower{0}), Error);
}

TEST_CASE("pendulum phase is evaluated on [-pi, pi] only") {
  const VectorField1D f({PendulumWave{2.0}, Identity{}});
  CHECK(f.phase_value(std::numbers::pi / 2) == 1.0);
  CHECK_THROWS_AS(f.phase_value(4.0), Error);
  CHECK_THROWS_AS(f.kernel(0.1), Error);
}

TEST_CASE("spec grammar") {
  CHECK(std::holds_alternative<Quadratic>(parse_phase("quadratic")));
  CHECK(std::get<PowerPhase>(parse_phase("power:0.5")).alpha == 0.5);
  CHECK(std::get<MonomialPhase>(parse_phase("monomial:4")).m == 4);
  CHECK(std::get<PendulumWave>(parse_phase("pendulum:2")).a == 2.0);
  CHECK(std::holds_alternative<Identity>(parse_param("identity")));
  CHECK(std::get<EvenPower>(parse_param("evenpower:3")).k == 3);
  CHECK(std::holds_alternative<InverseSquareExp>(parse_param("invsqexp")));

  for (const char* text : {"quadratic", "power:0.5", "power:1.25", "monomial:6", "pendulum:0.5"}) {
    CHECK(to_string(parse_phase(text)) == text);
  }
  for (const char* text : {"identity", "evenpower:2", "invsqexp"}) CHECK(to_string(parse_param(text)) == text);
  CHECK(to_string(PhaseFn{PowerPhase{0.1}}) == "power:0.1");

  for (const char* bad : {"", "power", "power:", "power:x", "power:-1", "monomial:2.5", "monomial:1",
                          "cubic", "quadratic:2", "pendulum:0"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_phase(bad), Error);
  }
  for (const char* bad : {"", "evenpower", "evenpower:0", "identity:1", "exp"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_param(bad), Error);
  }
}
