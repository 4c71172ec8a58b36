#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eqflow/energy.hpp"
#include "eqflow/errors.hpp"
#include "eqflow/flow.hpp"
#include "eqflow/spatial.hpp"
#include "support.hpp"

using namespace eqflow;
constexpr double pi = std::numbers::pi;

namespace {

// Bogomolny: on theta_alpha the density is 2 k sin(h) h_r / r, so E = 2 pi k (1 - cos h(1)).
double theta_energy(double alpha, int k) {
  const double u = std::pow(alpha, k);
  return 2 * pi * k * 2 * u * u / (1 + u * u);
}

Snapshot snap(const FlowRun& run) { return {run.time(), run.profile().values}; }

}  // namespace

TEST_CASE("energy examples") {
  const auto g = testing::grid(1024);
  CHECK(energy(*g, std::vector<double>(g->node_count(), 0.0), 1) == 0.0);
  CHECK(energy(*g, std::vector<double>(g->node_count(), pi), 1) == doctest::Approx(0.0).epsilon(1e-20));
  const double e = energy(*g, sample_stationary(StationaryProfile::theta(1.0, 1), *g), 1);
  CHECK(std::abs(e - 2 * pi) <= 0.005 * 2 * pi);
}

TEST_CASE("theta energy converges to the closed form") {
  for (int k = 1; k <= 3; ++k) {
    for (double alpha : {0.5, 1.0, 4.0}) {
      std::vector<double> trap, disc;
      for (std::size_t N : {128, 256, 512, 1024}) {
        const auto g = testing::grid(N, default_grading(k));
        const auto h = sample_stationary(StationaryProfile::theta(alpha, k), *g);
        trap.push_back(std::abs(energy(*g, h, k) - theta_energy(alpha, k)));
        disc.push_back(std::abs(discrete_energy(*g, h, k) - theta_energy(alpha, k)));
      }
      INFO("k=" << k << " alpha=" << alpha);
      CHECK(testing::min_of(testing::observed_orders(trap)) >= 1.8);
      // the discrete energy of a discrete equilibrium is exact up to roundoff
      CHECK(disc.back() <= 1e-10);
    }
  }
}

TEST_CASE("property: energies are nonnegative and symmetric") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = gen.integer(1, 3);
    const auto g = testing::grid(static_cast<std::size_t>(gen.integer(16, 200)), default_grading(k));
    auto h = gen.knot_profile(*g, gen.integer(1, 8), -6, 6);
    const double e = energy(*g, h, k);
    CHECK(e >= 0.0);
    CHECK(discrete_energy(*g, h, k) >= 0.0);
    auto neg = h, shift = h;
    for (auto& v : neg) v = -v;
    for (auto& v : shift) v += 2 * pi;
    CHECK(energy(*g, neg, k) == doctest::Approx(e));
    CHECK(energy(*g, shift, k) == doctest::Approx(e));
    const auto cum = cumulative_energy(*g, h, k);
    CHECK(cum.front() == 0.0);
    CHECK(cum.back() == doctest::Approx(e));
    for (std::size_t i = 1; i < cum.size(); ++i) CHECK(cum[i] >= cum[i - 1]);
  }
}

TEST_CASE("four-arctan run dissipates energy") {
  FlowRun run(testing::grid(256), BoundaryDataSpec::four_arctan(1));
  const auto s = solve_recorded(run, 2.0);
  const auto ledger = build_energy_ledger(s, run.spec());
  CHECK(ledger.samples.size() == s.size());
  for (const auto& smp : ledger.samples) CHECK(smp.flux == 0.0);
  double prev = INFINITY;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = discrete_energy(s.profile(i));
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
  CHECK(ledger.samples.back().energy < ledger.samples.front().energy);
  const auto csv = energy_ledger_csv(ledger);
  CHECK(csv.rfind("time,energy", 0) == 0);
}

TEST_CASE("stationary run has a vanishing energy rate") {
  FlowRun run(testing::grid(256), BoundaryDataSpec::stationary_arctan(1, 1.0));
  run.solve_until(0.5);
  const auto a = snap(run);
  run.solve_until(0.6);
  const auto c = energy_rate_check(run.grid(), run.spec(), a, snap(run));
  CHECK(std::abs(c.measured_rate) <= 1e-9);
  CHECK(c.boundary_flux == 0.0);
  CHECK(c.residual <= 1e-9);
  CHECK_THROWS_AS(energy_rate_check(run.grid(), run.spec(), snap(run), a), UsageError);
}

TEST_CASE("energy rate identity converges under refinement") {
  TimeModulation mod;
  mod.kind = TimeModulation::Kind::Linear;
  mod.rate = 0.5;
  const auto spec = BoundaryDataSpec::four_arctan(1).with_modulation(mod);
  std::vector<double> res;
  for (std::size_t N : {64, 128, 256}) {
    SolverOptions opt;
    const double q = 64.0 / static_cast<double>(N);
    opt.dt_max = 4e-4 * q * q;
    opt.dt_initial = opt.dt_max;
    FlowRun run(testing::grid(N), spec, opt);
    run.solve_until(0.2);
    const auto a = snap(run);
    run.solve_until(0.2 + 4 * opt.dt_max);
    const auto c = energy_rate_check(run.grid(), spec, a, snap(run));
    CHECK(c.boundary_flux != 0.0);
    res.push_back(c.residual);
  }
  INFO(res[0] << " " << res[1] << " " << res[2]);
  CHECK(testing::min_of(testing::observed_orders(res)) >= 1.0);
}

TEST_CASE("Sacks-Uhlenbeck examples") {
  for (int k = 1; k <= 3; ++k) {
    for (double alpha : {0.5, 2.0, 30.0}) {
      for (double r : {0.0, 0.01, 0.3, 1.0}) {
        CHECK(std::abs(sacks_uhlenbeck_analytic(StationaryProfile::theta(alpha, k), r)) <= 1e-10);
        CHECK(first_order_identity_residual(StationaryProfile::theta(alpha, k), r) <= 1e-12);
      }
    }
  }
  const auto g = testing::grid(64);
  const std::vector<double> zero(g->node_count(), 0.0);
  for (double v : sacks_uhlenbeck_residual(Profile{g, zero, 0.0, 1}, zero)) CHECK(v == 0.0);
  const std::vector<double> half(g->node_count(), pi / 2);
  CHECK(sacks_uhlenbeck_residual(Profile{g, half, 0.0, 1}, zero).back() == doctest::Approx(1.0));
}

TEST_CASE("discrete Sacks-Uhlenbeck residual on theta shrinks at second order") {
  for (int k = 1; k <= 2; ++k) {
    std::vector<double> err;
    for (std::size_t N : {128, 256, 512, 1024}) {
      const auto g = testing::grid(N, default_grading(k));
      const auto h = sample_stationary(StationaryProfile::theta(1.0, k), *g);
      const std::vector<double> ht(h.size(), 0.0);
      err.push_back(sup_norm(sacks_uhlenbeck_residual(Profile{g, h, 0.0, k}, ht)));
    }
    INFO("k=" << k);
    CHECK(testing::min_of(testing::observed_orders(err)) >= 1.8);
  }
}

TEST_CASE("Sacks-Uhlenbeck identity holds along a run") {
  // h_t from the discrete operator; both sides are evaluated on the same profile
  std::vector<double> err;
  for (std::size_t N : {128, 256, 512}) {
    FlowRun run(testing::grid(N), BoundaryDataSpec::four_arctan(1));
    run.solve_until(0.3);
    const auto tau = evaluate_tau(run.grid(), run.profile().values, 1);
    std::vector<double> ht(run.profile().size(), 0.0);
    for (std::size_t i = 0; i < tau.size(); ++i) ht[i + 1] = tau[i];
    err.push_back(sup_norm(sacks_uhlenbeck_residual(run.profile(), ht)));
  }
  INFO(err[0] << " " << err[1] << " " << err[2]);
  CHECK(testing::min_of(testing::observed_orders(err)) >= 1.0);
}
