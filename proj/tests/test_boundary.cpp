#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eqflow/boundary.hpp"
#include "eqflow/errors.hpp"
#include "support.hpp"

using namespace eqflow;
constexpr double pi = std::numbers::pi;

TEST_CASE("evaluate_boundary examples") {
  CHECK(evaluate_boundary(BoundaryDataSpec::stationary_arctan(1, 1.0), 1.0, 0.0) == doctest::Approx(pi / 2));
  CHECK(evaluate_boundary(BoundaryDataSpec::stationary_arctan(1, 1.0), 1.0, 7.5) == doctest::Approx(1.5707963));
  CHECK(evaluate_boundary(BoundaryDataSpec::four_arctan(1), 1.0, 0.0) == doctest::Approx(pi));
  CHECK(evaluate_boundary(BoundaryDataSpec::linear_ramp(1, 3.5), 0.5, 0.0) == doctest::Approx(1.75));
  CHECK(evaluate_boundary(BoundaryDataSpec::stationary_arctan(2, 3.0, -1, 2), 0.5, 0.0) ==
        doctest::Approx(2 * pi - 2 * std::atan(2.25)));
}

TEST_CASE("domain errors") {
  const auto s = BoundaryDataSpec::four_arctan(1);
  CHECK_THROWS_AS(evaluate_boundary(s, -0.1, 0.0), UsageError);
  CHECK_THROWS_AS(evaluate_boundary(s, 1.5, 0.0), UsageError);
  CHECK_THROWS_AS(evaluate_boundary(s, 0.5, -1.0), UsageError);
  CHECK_THROWS_AS(BoundaryDataSpec::four_arctan(0), ConfigError);
  CHECK_THROWS_AS(BoundaryDataSpec::stationary_arctan(1, -2.0), ConfigError);
  CHECK_THROWS_AS(BoundaryDataSpec::scaled_profile(1, {0.0, 0.5}, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(boundary_kind_from_string("Nope"), ConfigError);
}

TEST_CASE("validate_spec examples") {
  const RadialGrid g(64, 2.0);
  const auto four = validate_spec(BoundaryDataSpec::four_arctan(1), g);
  CHECK(four.bounded_by_pi);
  CHECK(four.sup_abs == doctest::Approx(pi));
  CHECK(four.ok());

  const auto ramp = validate_spec(BoundaryDataSpec::linear_ramp(1, 3.5), g);
  CHECK_FALSE(ramp.bounded_by_pi);
  CHECK(ramp.sup_abs == doctest::Approx(3.5));
  CHECK(ramp.ok());

  const auto zero = validate_spec(BoundaryDataSpec::constant_value(1, 0.0), g);
  CHECK(zero.ok());
  CHECK(zero.bounded_by_pi);
  CHECK(zero.sup_abs == 0.0);

  const auto off = validate_spec(BoundaryDataSpec::constant_value(1, 1.0), g);
  CHECK_FALSE(off.origin_on_pi_lattice);
}

TEST_CASE("scaled boundedness flags r^-k blow-up") {
  const RadialGrid g(64, 2.0);
  // r^k * g(r) with g jumping at the first node grows like r^-k near 0 once scaled.
  auto sq = BoundaryDataSpec::scaled_profile(2, {0.0, 1.0}, {1.0, 1.0});
  CHECK(validate_spec(sq, g).scaled_bounded);
  auto spike = BoundaryDataSpec::scaled_profile(1, {0.0, 0.002, 1.0}, {100.0, 0.0, 0.0});
  const auto rep = validate_spec(spike, g);
  CHECK(rep.scaled_samples.size() == 3);
  CHECK_FALSE(rep.scaled_bounded);
}

TEST_CASE("modulation derivative matches central differences") {
  const std::vector<TimeModulation> mods{
      {TimeModulation::Kind::Linear, 0.3},
      {TimeModulation::Kind::Sinusoid, 0.0, 0.2, 3.0},
      {TimeModulation::Kind::Relaxation, 0.0, 0.0, 0.0, 1.4, 0.7},
  };
  for (const auto& m : mods) {
    for (double t : {0.1, 0.5, 2.0}) {
      const double h = 1e-6;
      const double fd = (m.value(t + h) - m.value(t - h)) / (2 * h);
      CHECK(m.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  const auto spec = BoundaryDataSpec::linear_ramp(1, 2.0).with_modulation(mods[1]);
  const double fd = (evaluate_boundary(spec, 1.0, 0.5 + 1e-6) - evaluate_boundary(spec, 1.0, 0.5 - 1e-6)) / 2e-6;
  CHECK(boundary_time_derivative(spec, 1.0, 0.5) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("parabolic boundary traces") {
  const RadialGrid g(32, 2.0);
  const auto spec = BoundaryDataSpec::four_arctan(1).with_modulation({TimeModulation::Kind::Linear, 0.5});
  const auto pb = sample_parabolic_boundary(spec, g, 2.0, 9);
  CHECK(pb.times.size() == 9);
  CHECK(pb.initial_values.size() == g.node_count());
  CHECK(pb.corners_consistent());
  CHECK(pb.right_values.back() == doctest::Approx(2.0 * pi));
  for (double v : pb.left_values) CHECK(v == 0.0);
}

TEST_CASE("kind names round trip") {
  for (auto k : {BoundaryKind::StationaryArctan, BoundaryKind::FourArctan, BoundaryKind::LinearRamp,
                 BoundaryKind::ScaledProfile, BoundaryKind::Constant}) {
    CHECK(boundary_kind_from_string(to_string(k)) == k);
  }
}

TEST_CASE("property: origin stays on the pi lattice") {
  testing::Gen gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = gen.integer(1, 4);
    BoundaryDataSpec spec;
    switch (trial % 4) {
      case 0: spec = BoundaryDataSpec::stationary_arctan(k, gen.log_uniform(0.1, 100.0), trial % 8 ? 1 : -1,
                                                        gen.integer(-3, 3)); break;
      case 1: spec = BoundaryDataSpec::four_arctan(k, gen.log_uniform(0.1, 10.0)); break;
      case 2: spec = BoundaryDataSpec::linear_ramp(k, gen.uniform(-5.0, 5.0)); break;
      default: spec = BoundaryDataSpec::scaled_profile(k, {0.0, 0.4, 1.0}, {gen.uniform(-2, 2), gen.uniform(-2, 2),
                                                                            gen.uniform(-2, 2)}); break;
    }
    spec = spec.with_modulation({TimeModulation::Kind::Sinusoid, 0.0, gen.uniform(0.0, 0.5), gen.uniform(0.0, 5.0)});
    const double t = gen.uniform(0.0, 10.0);
    const double h0 = evaluate_boundary(spec, 0.0, t);
    REQUIRE(std::abs(h0 - std::round(h0 / pi) * pi) <= 1e-12);
    REQUIRE(origin_multiple(spec, t).has_value());
  }
}

TEST_CASE("property: StationaryArctan monotone in alpha") {
  testing::Gen gen(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = gen.integer(1, 3);
    double a1 = gen.log_uniform(0.01, 100.0), a2 = gen.log_uniform(0.01, 100.0);
    if (a1 > a2) std::swap(a1, a2);
    const double r = gen.uniform(0.0, 1.0);
    REQUIRE(evaluate_boundary(BoundaryDataSpec::stationary_arctan(k, a1), r, 0.0) <=
            evaluate_boundary(BoundaryDataSpec::stationary_arctan(k, a2), r, 0.0));
  }
}
