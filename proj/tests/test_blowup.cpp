#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eqflow/blowup.hpp"
#include "eqflow/errors.hpp"
#include "eqflow/principles.hpp"
#include "eqflow/stationary.hpp"
#include "support.hpp"

using namespace eqflow;
constexpr double pi = std::numbers::pi;

namespace {

Profile sampled(GridPtr g, const StationaryProfile& sp) {
  auto v = sample_stationary(sp, *g);
  return Profile{std::move(g), std::move(v), 0.0, sp.k};
}

Profile from(GridPtr g, double (*f)(double), int k = 1) {
  std::vector<double> v;
  for (double r : g->nodes()) v.push_back(f(r));
  return Profile{std::move(g), std::move(v), 0.0, k};
}

struct RampRun {
  std::optional<BlowUpEvent> event;
  double threshold;
};

const RampRun& ramp256() {
  static const RampRun result = [] {
    FlowRun run(testing::grid(256), BoundaryDataSpec::linear_ramp(1, 3.5));
    BlowUpDetector det(testing::grid(256), 1);
    auto obs = det.observer();
    run.solve_until(10.0, std::span(&obs, 1));
    det.finish(run);
    return RampRun{det.event(), det.threshold()};
  }();
  return result;
}

}  // namespace

TEST_CASE("r_plus examples") {
  const auto g = testing::grid(512);
  CHECK(r_plus(sampled(g, StationaryProfile::theta(1.0, 1))) == 1.0);
  CHECK(r_plus(from(g, [](double r) { return 3.5 * r; })) == doctest::Approx(pi / 3.5).epsilon(1e-6));
  CHECK(r_plus(from(g, [](double) { return 0.0; }), pi / 2) == 1.0);
}

TEST_CASE("fronts of the ramp run are ordered") {
  FlowRun run(testing::grid(128), BoundaryDataSpec::linear_ramp(1, 3.5));
  FrontTracker fronts;
  auto obs = fronts.observer();
  run.solve_until(0.5, std::span(&obs, 1));
  CHECK(fronts.samples().size() == run.step_count());
  CHECK(fronts.ordered());
  for (const auto& s : fronts.samples()) CHECK(s.r_minus <= s.r_plus);
}

TEST_CASE("detection threshold is capped by grid resolution") {
  const RadialGrid g(512, 2.0);
  const double G = resolvable_gradient(g, 1, 8);
  CHECK(G > 1e4);
  CHECK(G < 1e5);
  // the core of a bubble with R = 2/G holds the requested number of nodes
  const double R = 2.0 / G;
  const double lo = std::tan(0.05 * pi) * R, hi = std::tan(0.45 * pi) * R;
  std::size_t inside = 0;
  for (double r : g.nodes()) inside += (r >= lo && r <= hi);
  CHECK(inside >= 8);
  DetectorOptions opt;
  CHECK(detection_threshold(g, 1, opt) == doctest::Approx(G));
  opt.core_nodes = 0;
  CHECK(detection_threshold(g, 1, opt) == opt.G_max);
  CHECK(resolvable_gradient(RadialGrid(1024, 2.0), 1, 8) > G);
}

TEST_CASE("global and stationary runs do not fire") {
  for (auto spec : {BoundaryDataSpec::four_arctan(1), BoundaryDataSpec::stationary_arctan(1, 1.0)}) {
    FlowRun run(testing::grid(256), spec);
    CHECK_FALSE(detect_blowup(run, 5.0));
    CHECK(run.status() == RunStatus::CompletedT);
  }
}

TEST_CASE("ramp run fires with a concentrated single bubble") {
  const auto& r = ramp256();
  REQUIRE(r.event);
  const auto& e = *r.event;
  CHECK(e.detect_time < 10.0);
  CHECK(e.max_gradient >= r.threshold);
  CHECK(e.concentrated);
  CHECK(e.argmax_radius < 0.1);
  CHECK(e.snapshots.size() <= DetectorOptions{}.buffer);
  CHECK(e.snapshots.back().time == e.detect_time);
  for (std::size_t i = 1; i < e.snapshots.size(); ++i) CHECK(e.snapshots.snapshots[i].time > e.snapshots.snapshots[i - 1].time);
  for (std::size_t i = 0; i < e.snapshots.size(); ++i) CHECK(bubble_count(e.snapshots.profile(i)).count == 1);

  const auto fit = extract_bubble(e, e.snapshots.size() - 1);
  CHECK(fit.sup_error <= 0.05 * pi);
  CHECK(fit.sign == 1);
  CHECK(fit.m_offset == 0);
  CHECK(fit.T_n == e.detect_time);

  const auto lim = origin_limit_check(e.snapshots.profile(e.snapshots.size() - 1));
  CHECK(lim.conclusive);
  CHECK(lim.nearest_m == 1);
  CHECK(lim.relative_deviation <= 0.10);

  CHECK_THROWS_AS(extract_bubble(e, e.snapshots.size()), UsageError);
}

TEST_CASE("ramp self comparison and Q chain up to detection") {
  const auto& s = ramp256().event->snapshots;
  SolverOptions opt;
  CHECK(self_comparison_check(s, 0.01, comparison_tolerance(*s.grid, opt.dt_max)).verdict != Verdict::Fail);
  CHECK(chain_monotonicity(s, ChainParams{}).verdict == Verdict::Pass);
}

TEST_CASE("extract_bubble on the model family") {
  const auto g = testing::grid(4096);
  BubbleOptions any;
  any.min_gradient = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const auto gk = testing::grid(4096, default_grading(k));
    const auto fit = extract_bubble(sampled(gk, StationaryProfile::theta(8.0, k)), any);
    INFO("k=" << k);
    CHECK(fit.sup_error <= 1e-6);
    CHECK(fit.sign == 1);
    CHECK(fit.m_offset == 0);
    // rho = r / R_n, so the rescaled alpha times R_n recovers 8
    CHECK(fit.alpha_est / fit.R_n == doctest::Approx(8.0).epsilon(1e-6));
    if (k == 1) CHECK(fit.alpha_est == doctest::Approx(1.0).epsilon(1e-6));
  }
  const auto mirrored = extract_bubble(sampled(g, StationaryProfile::chi(8.0, 1)), any);
  CHECK(mirrored.sign == -1);
  CHECK(mirrored.m_offset == 1);
  CHECK(mirrored.sup_error <= 1e-6);

  CHECK_THROWS_AS(extract_bubble(from(g, [](double r) { return 0.1 * r; })), UsageError);
  CHECK_THROWS_AS(extract_bubble(from(g, [](double) { return 0.0; }), any), NoTransitError);
}

TEST_CASE("property: fits recover random arctan bubbles") {
  testing::Gen gen(41);
  const auto g = testing::grid(2048);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = gen.log_uniform(60, 2000);
    const int m = gen.integer(-2, 2);
    const int sign = gen.integer(0, 1) ? 1 : -1;
    std::vector<double> v;
    for (double r : g->nodes()) v.push_back(m * pi + sign * 2 * std::atan(alpha * r));
    const auto fit = extract_bubble(Profile{g, v, 0.0, 1});
    INFO("alpha=" << alpha << " m=" << m << " sign=" << sign);
    CHECK(fit.sign == sign);
    CHECK(fit.m_offset == m);
    CHECK(fit.alpha_est / fit.R_n == doctest::Approx(alpha).epsilon(1e-6));
    CHECK(fit.sup_error <= 1e-6);
  }
}

TEST_CASE("rescaled profile") {
  const auto g = testing::grid(256);
  const auto p = sampled(g, StationaryProfile::theta(8.0, 1));
  const auto pts = rescaled_profile(p, 0.25, 2.0);
  REQUIRE_FALSE(pts.empty());
  for (auto [rho, H] : pts) {
    CHECK(rho <= 2.0);
    CHECK(H == doctest::Approx(2 * std::atan(8 * 0.25 * rho)));
  }
}

TEST_CASE("bubble_count examples") {
  const auto g = testing::grid(2048);
  CHECK(bubble_count(sampled(g, StationaryProfile::theta(8.0, 1))).count == 1);
  CHECK(bubble_count(from(g, [](double) { return 0.0; })).count == 0);
  const auto two = bubble_count(from(g, [](double r) { return 2 * std::atan(1000 * r) + 2 * std::atan(10 * r); }));
  CHECK(two.count == 2);
  REQUIRE(two.intervals.size() == 2);
  CHECK(two.intervals[0].second <= two.intervals[1].first);
  // a downward transit does not count
  CHECK(bubble_count(sampled(g, StationaryProfile::chi(8.0, 1))).count == 0);
  CHECK(bubble_count(sampled(g, StationaryProfile::theta(8.0, 1)), 0.01).count == 0);
}

TEST_CASE("property: bubble_count counts stacked arctans") {
  testing::Gen gen(77);
  const auto g = testing::grid(4096);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = gen.integer(1, 3);
    std::vector<double> alphas;
    double a = gen.log_uniform(2, 5);
    for (int i = 0; i < n; ++i) {
      alphas.push_back(a);
      a *= gen.log_uniform(200, 400);
    }
    std::vector<double> v;
    for (double r : g->nodes()) {
      double s = 0;
      for (double al : alphas) s += 2 * std::atan(al * r);
      v.push_back(s);
    }
    // the slowest bubble reaches the band only if 2 atan(alpha) clears 3 pi / 4
    const bool last_complete = 2 * std::atan(alphas.front()) >= 0.75 * pi;
    INFO("n=" << n);
    CHECK(bubble_count(Profile{g, v, 0.0, 1}).count == static_cast<std::size_t>(last_complete ? n : n - 1));
  }
}

TEST_CASE("origin limit examples") {
  const auto g = testing::grid(1024);
  const auto th = sampled(g, StationaryProfile::theta(8.0, 1));
  const auto lim = origin_limit_check(th, 1.0 / 16);
  CHECK(lim.conclusive);
  CHECK(lim.nearest_m == 1);
  double dev = 0.0;
  for (double r : g->nodes()) if (r >= 0.625) dev = std::max(dev, std::abs(2 * std::atan(8 * r) - pi));
  CHECK(lim.max_deviation == doctest::Approx(dev).epsilon(1e-6));
  CHECK(lim.relative_deviation == doctest::Approx(dev / pi).epsilon(1e-6));

  const auto zero = origin_limit_check(from(g, [](double) { return 0.0; }));
  CHECK(zero.nearest_m == 0);
  CHECK(zero.max_deviation == 0.0);

  CHECK_FALSE(origin_limit_check(th, 0.5).conclusive);
}
