#include <doctest.h>

#include <cmath>

#include "eqflow/errors.hpp"
#include "eqflow/grid.hpp"
#include "support.hpp"

using namespace eqflow;

TEST_CASE("uniform and squared node laws") {
  const auto u = graded_nodes(4, 1.0);
  const std::vector<double> expect_u{0.0, 0.25, 0.5, 0.75, 1.0};
  CHECK(u == expect_u);
  const auto s = graded_nodes(4, 2.0);
  const std::vector<double> expect_s{0.0, 0.0625, 0.25, 0.5625, 1.0};
  CHECK(s == expect_s);
}

TEST_CASE("smallest interior node at N=1024") {
  const RadialGrid g(1024, 2.0);
  CHECK(g[1] == doctest::Approx(9.5367431640625e-7).epsilon(1e-12));
  CHECK(g.resolution() == 1024);
  CHECK(g.node_count() == 1025);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(RadialGrid(8, 2.0), ConfigError);
  CHECK_THROWS_AS(RadialGrid(15, 1.0), ConfigError);
  CHECK_THROWS_AS(RadialGrid(64, 0.5), ConfigError);
  CHECK_THROWS_AS(RadialGrid(64, std::nan("")), ConfigError);
  CHECK_THROWS_AS(graded_nodes(0, 1.0), ConfigError);
  CHECK_NOTHROW(RadialGrid(16, 1.0));
}

TEST_CASE("refine doubles N") {
  const RadialGrid g(16, 2.0);
  const auto r = refine(g);
  CHECK(r.resolution() == 32);
  CHECK(r.node_count() == 33);
  CHECK(r.grading_exponent() == 2.0);
  CHECK(refine(refine(g)).resolution() == 64);

  const RadialGrid u(16, 1.0);
  const auto ru = refine(u);
  for (std::size_t i = 0; i <= 16; ++i) CHECK(ru[2 * i] == u[i]);
}

TEST_CASE("default grading") {
  CHECK(default_grading(1) == 2.0);
  CHECK(default_grading(2) == 2.0);
  CHECK(default_grading(3) == 3.0);
  CHECK(default_grading(5) == 5.0);
}

TEST_CASE("property: random grids satisfy the invariants") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t N = static_cast<std::size_t>(gen.integer(16, 3000));
    const double gamma = trial % 5 == 0 ? 1.0 : gen.uniform(1.0, 5.0);
    const RadialGrid g(N, gamma);
    REQUIRE(g[0] == 0.0);
    REQUIRE(g[N] == 1.0);
    for (std::size_t i = 1; i <= N; ++i) REQUIRE(g[i] > g[i - 1]);
    for (std::size_t i = 1; i < N; ++i) {
      const double law = std::pow(double(i) / double(N), gamma);
      REQUIRE(std::abs(g[i] - law) <= std::abs(std::nextafter(law, 2.0) - law));
    }
    if (gamma > 1.0) REQUIRE(g.spacing(0) < g.spacing(N - 1));
    CHECK(g.min_spacing() <= g.max_spacing());
    CHECK(g == RadialGrid(N, gamma));
  }
}
