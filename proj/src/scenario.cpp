#include "eqflow/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "eqflow/blowup.hpp"
#include "eqflow/energy.hpp"
#include "eqflow/errors.hpp"
#include "eqflow/principles.hpp"
#include "eqflow/spatial.hpp"
#include "eqflow/stationary.hpp"
#include "eqflow/variational.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o = c.solver;
  o.newton_tol = c.tolerances.newton_tol;
  o.gradient_limit = c.tolerances.G_max;
  return o;
}

GridPtr make_grid(const RunConfig& c) { return std::make_shared<const RadialGrid>(c.N, c.grading()); }

struct Context {
  const RunConfig& config;
  ScenarioResult result;
  Json details = Json::object();

  explicit Context(const RunConfig& c) : config(c) {
    result.scenario = c.scenario;
    result.scalars = Json::object();
  }

  void check(std::string name, bool passed, std::string detail) {
    result.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  void write(const std::string& name, const std::string& text) const {
    if (!config.output_dir.empty()) write_text(config.output_dir / name, text);
  }

  void write_run(const FlowRun& run, const SnapshotSeries& series) const {
    if (config.output_dir.empty()) return;
    SnapshotSeries thin{series.grid, series.k, {}};
    const std::size_t every = std::max<std::size_t>(1, config.snapshot_every);
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (i % every == 0 || i + 1 == series.size()) thin.snapshots.push_back(series.snapshots[i]);
    }
    write("snapshots.csv", snapshot_csv(thin));
    write("events.jsonl", events_jsonl(run.event_log()));
  }

  ScenarioResult finish() {
    Json checks = Json::array();
    for (const auto& c : result.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    result.report = make_report("scenario", Json{{"scenario", config.scenario},
                                                 {"passed", result.passed()},
                                                 {"config", config_to_json(config)},
                                                 {"checks", checks},
                                                 {"scalars", result.scalars},
                                                 {"details", details}});
    write("report.json", result.report.dump(2) + "\n");
    write("summary.txt", result.summary());
    return std::move(result);
  }
};

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double value_at_radius(const RadialGrid& g, std::span<const double> h, double r) {
  const auto nodes = g.nodes();
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), r);
  if (it == nodes.begin()) return h.front();
  if (it == nodes.end()) return h.back();
  const std::size_t i = static_cast<std::size_t>(it - nodes.begin());
  const double f = (r - g[i - 1]) / g.spacing(i - 1);
  return h[i - 1] + f * (h[i] - h[i - 1]);
}

bool time_independent(const BoundaryDataSpec& spec) {
  return spec.kind == BoundaryKind::Constant || spec.modulation.kind == TimeModulation::Kind::Constant;
}

void energy_checks(Context& ctx, const SnapshotSeries& series, const BoundaryDataSpec& spec) {
  const auto ledger = build_energy_ledger(series, spec);
  ctx.write("energy.csv", energy_ledger_csv(ledger));
  ctx.result.scalars["energy_initial"] = ledger.samples.front().energy;
  ctx.result.scalars["energy_final"] = ledger.samples.back().energy;
  ctx.details["energy"] = Json{{"max_energy", ledger.max_energy()}, {"max_increase", ledger.max_increase()},
                               {"max_identity_residual", ledger.max_residual()}};
  if (time_independent(spec)) {
    const VariationalOperator op(*series.grid, series.k);
    double rise = 0.0, running_min = std::numeric_limits<double>::infinity();
    for (const auto& s : series.snapshots) {
      const double e = op.energy(s.values);
      rise = std::max(rise, e - running_min);
      running_min = std::min(running_min, e);
    }
    ctx.details["energy"]["discrete_max_increase"] = rise;
    ctx.check("energy non-increasing", rise <= 1e-6,
              "discrete max increase " + fmt(rise) + ", trapezoid " + fmt(ledger.max_increase()));
  }
}

void stationary_scenario(Context& ctx) {
  const auto& c = ctx.config;
  const auto grid = make_grid(c);
  const auto spec = c.boundary();
  FlowRun run(grid, spec, solver_options(c));
  const auto series = solve_recorded(run, c.T);
  ctx.write_run(run, series);
  ctx.check("run completed", run.status() == RunStatus::CompletedT, to_string(run.status()));
  const double drift = sup_diff(series.front().values, series.back().values);
  ctx.check("stationary drift", drift <= 1e-3, "sup drift " + fmt(drift));
  const auto tau = evaluate_tau(*grid, series.front().values, c.k);
  ctx.result.scalars["drift"] = drift;
  ctx.result.scalars["tau_residual"] = sup_norm(tau);
  ctx.result.scalars["steps"] = run.step_count();
  energy_checks(ctx, series, spec);
}

void global_scenario(Context& ctx) {
  const auto& c = ctx.config;
  const auto grid = make_grid(c);
  const auto spec = c.boundary();
  const auto opts = solver_options(c);
  FlowRun run(grid, spec, opts);
  BlowUpDetector detector(grid, c.k, DetectorOptions{c.tolerances.G_max});
  const std::array<Observer, 1> extra{detector.observer()};
  const auto series = solve_recorded(run, c.T, extra);
  detector.finish(run);
  ctx.write_run(run, series);
  ctx.check("run completed", run.status() == RunStatus::CompletedT, to_string(run.status()));
  ctx.check("no blow-up detected", !detector.event().has_value(), "threshold " + fmt(detector.threshold()));

  double min_ht = std::numeric_limits<double>::infinity();
  double min_hr = std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& h = series.snapshots[s].values;
    for (std::size_t i = 0; i < h.size(); ++i) {
      lo = std::min(lo, h[i]);
      hi = std::max(hi, h[i]);
      if (i + 1 < h.size()) min_hr = std::min(min_hr, h[i + 1] - h[i]);
    }
    if (s > 0) {
      const double dt = series.snapshots[s].time - series.snapshots[s - 1].time;
      const auto& p = series.snapshots[s - 1].values;
      for (std::size_t i = 0; i < h.size(); ++i) min_ht = std::min(min_ht, (h[i] - p[i]) / dt);
    }
  }
  ctx.check("h_t >= 0", min_ht >= -1e-6, "min h_t " + fmt(min_ht));
  ctx.check("h increasing in r", min_hr >= -1e-9, "min node increment " + fmt(min_hr));
  ctx.check("0 <= h <= pi", lo >= -1e-6 && hi <= kPi + 1e-6, "range [" + fmt(lo) + ", " + fmt(hi) + "]");
  energy_checks(ctx, series, spec);

  const double h0 = value_at_radius(*grid, series.front().values, 0.5);
  const double h1 = value_at_radius(*grid, series.back().values, 0.5);
  ctx.check("h(0.5) grows", h1 - h0 >= 0.05, "h(0.5): " + fmt(h0) + " -> " + fmt(h1));
  ctx.result.scalars["h_half_final"] = h1;

  const auto pi_series = frozen_series(grid, c.k, std::vector<double>(grid->node_count(), kPi),
                                       std::array<double, 2>{0.0, c.T});
  const double tol = comparison_tolerance(*grid, opts.dt_max);
  const auto cmp = comparison_check(series, pi_series, tol);
  ctx.check("comparison with pi", cmp.ordered(), "max violation " + fmt(cmp.max_violation));
  const auto self = self_comparison_check(series, 0.01, tol);
  ctx.check("self comparison tau=0.01", self.ordered(), to_string(self.verdict) + ", max violation " + fmt(self.max_violation));
  const auto maxp = discrete_maximum_check(series, kPi, 1e-9, std::min(0.1, c.T));
  ctx.check("strict maximum principle", maxp.verdict == Verdict::Pass, "margin " + fmt(maxp.min_margin));
  const auto chains = chain_monotonicity(series, ChainParams{}, 1);
  const bool chain_one = std::all_of(chains.lengths.begin(), chains.lengths.end(), [](std::size_t m) { return m == 1; });
  ctx.check("Q chain constant 1", chain_one && chains.verdict == Verdict::Pass, to_string(chains.verdict));
  ctx.details["comparison"] = to_json(cmp);
  ctx.details["self_comparison"] = to_json(self);
  ctx.details["maximum"] = to_json(maxp);

  const auto prof = series.profile(series.size() - 1);
  const double G = run.max_gradient();
  ctx.result.scalars["max_gradient_final"] = G;
  try {
    const auto fit = extract_bubble(prof);
    ctx.check("core fits arctan bubble", fit.sup_error <= 0.05 * kPi, "sup error " + fmt(fit.sup_error) + " rad");
    ctx.details["bubble_fit"] = to_json(fit);
    ctx.result.scalars["fit_sup_error"] = fit.sup_error;
  } catch (const std::exception& e) {
    ctx.check("core fits arctan bubble", false, e.what());
  }
}

struct BlowUpOutcome {
  std::optional<BlowUpEvent> event;
  SnapshotSeries series;
  std::vector<RunEvent> log;
  double slope = 0.0;
};

BlowUpOutcome blowup_attempt(const RunConfig& c, const BoundaryDataSpec& spec) {
  const auto grid = make_grid(c);
  FlowRun run(grid, spec, solver_options(c));
  BlowUpDetector detector(grid, c.k, DetectorOptions{c.tolerances.G_max});
  detector.observe(run);
  const std::array<Observer, 1> extra{detector.observer()};
  BlowUpOutcome out;
  out.series = solve_recorded(run, c.T, extra);
  detector.finish(run);
  out.event = detector.event();
  out.log = run.event_log();
  out.slope = spec.slope;
  return out;
}

void blowup_scenario(Context& ctx) {
  const auto& c = ctx.config;
  auto spec = c.boundary();
  auto out = blowup_attempt(c, spec);
  if (!out.event && spec.kind == BoundaryKind::LinearRamp && spec.slope < 4.5) {
    ctx.details["inconclusive_slope"] = spec.slope;
    spec.slope = 4.5;
    out = blowup_attempt(c, spec);
  }
  if (!c.output_dir.empty()) {
    SnapshotSeries thin{out.series.grid, out.series.k, {}};
    for (std::size_t i = 0; i < out.series.size(); ++i) {
      if (i % std::max<std::size_t>(1, c.snapshot_every) == 0 || i + 1 == out.series.size())
        thin.snapshots.push_back(out.series.snapshots[i]);
    }
    ctx.write("snapshots.csv", snapshot_csv(thin));
    ctx.write("events.jsonl", events_jsonl(out.log));
  }
  ctx.result.scalars["slope"] = spec.slope;
  ctx.check("blow-up detected", out.event.has_value(), out.event ? "t = " + fmt(out.event->detect_time) : "none before T");
  if (!out.event) return;
  const auto& ev = *out.event;
  ctx.details["event"] = to_json(ev);
  ctx.result.scalars["detect_time"] = ev.detect_time;
  ctx.result.scalars["max_gradient"] = ev.max_gradient;
  ctx.check("concentrated at origin", ev.concentrated, "argmax r = " + fmt(ev.argmax_radius));

  std::size_t worst = 1;
  bool all_one = true;
  for (std::size_t n = 0; n < ev.snapshots.size(); ++n) {
    const auto bc = bubble_count(ev.snapshots.profile(n));
    if (bc.count != 1) {
      all_one = false;
      worst = bc.count;
    }
  }
  ctx.check("single bubble", all_one, all_one ? "count 1 on all buffered snapshots" : "count " + std::to_string(worst));

  const auto last = ev.snapshots.profile(ev.snapshots.size() - 1);
  const auto lim = origin_limit_check(last);
  ctx.details["origin_limit"] = to_json(lim);
  ctx.check("origin limit is pi", lim.conclusive && lim.nearest_m == 1 && lim.relative_deviation <= 0.1,
            "m = " + std::to_string(lim.nearest_m) + ", deviation " + fmt(lim.relative_deviation));
  try {
    const auto fit = extract_bubble(last);
    ctx.details["bubble_fit"] = to_json(fit);
    ctx.result.scalars["fit_sup_error"] = fit.sup_error;
    ctx.check("bubble fit", fit.sup_error <= 0.05 * kPi, "sup error " + fmt(fit.sup_error) + " rad");
  } catch (const std::exception& e) {
    ctx.check("bubble fit", false, e.what());
  }

  const double tol = comparison_tolerance(*out.series.grid, c.solver.dt_max);
  const auto self = self_comparison_check(out.series, 0.01, tol);
  ctx.details["self_comparison"] = to_json(self);
  ctx.check("self comparison tau=0.01", self.ordered(), to_string(self.verdict) + ", max violation " + fmt(self.max_violation));
  const auto chains = chain_monotonicity(out.series, ChainParams{}, 100);
  ctx.details["q_chain"] = to_json(chains);
  ctx.check("Q chain non-increasing", chains.verdict != Verdict::Fail, to_string(chains.verdict));

  FrontTracker fronts;
  for (std::size_t n = 0; n < ev.snapshots.size(); ++n) fronts.record(ev.snapshots.profile(n));
  ctx.check("r- <= r+", fronts.ordered(), std::to_string(fronts.samples().size()) + " samples");
  double min_rp = 1.0;
  for (const auto& s : fronts.samples()) min_rp = std::min(min_rp, s.r_plus);
  ctx.result.scalars["min_r_plus"] = min_rp;
}

void comparison_scenario(Context& ctx) {
  const auto& c = ctx.config;
  const auto grid = make_grid(c);
  const auto opts = solver_options(c);
  const double tol = comparison_tolerance(*grid, opts.dt_max);
  const std::array<double, 2> span{0.0, c.T};
  auto frozen = [&](double alpha) {
    return frozen_series(grid, c.k, sample_stationary(StationaryProfile::theta(alpha, c.k), *grid), span);
  };
  auto evolve = [&](const BoundaryDataSpec& spec) {
    FlowRun run(grid, spec, opts);
    return solve_recorded(run, c.T);
  };
  const auto pi_series = frozen_series(grid, c.k, std::vector<double>(grid->node_count(), kPi), span);
  const auto four = evolve(BoundaryDataSpec::four_arctan(c.k));
  const auto theta1 = evolve(BoundaryDataSpec::stationary_arctan(c.k, 1.0));

  struct Pair {
    std::string name;
    OrderingReport report;
  };
  std::vector<Pair> pairs;
  pairs.push_back({"theta_1 <= theta_2", comparison_check(frozen(1.0), frozen(2.0), tol)});
  pairs.push_back({"theta_2 <= theta_4", comparison_check(frozen(2.0), frozen(4.0), tol)});
  pairs.push_back({"four-arctan run <= pi", comparison_check(four, pi_series, tol)});
  pairs.push_back({"ramp 1 run <= ramp 2 run", comparison_check(evolve(BoundaryDataSpec::linear_ramp(c.k, 1.0)),
                                                             evolve(BoundaryDataSpec::linear_ramp(c.k, 2.0)), tol)});
  pairs.push_back({"theta_1 run <= four-arctan run", comparison_check(theta1, four, tol)});
  Json j = Json::array();
  for (const auto& p : pairs) {
    ctx.check(p.name, p.report.ordered(), "max violation " + fmt(p.report.max_violation) + ", tol " + fmt(tol));
    Json r = to_json(p.report);
    r["pair"] = p.name;
    j.push_back(r);
  }
  ctx.details["pairs"] = j;
  ctx.result.scalars["tolerance"] = tol;
}

std::vector<double> random_knot_profile(const RadialGrid& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, 6);
  std::uniform_real_distribution<double> val(0.0, 1.5 * kPi);
  const int K = count(rng);
  std::vector<double> kr{0.0}, kv{0.0};
  for (int i = 1; i <= K; ++i) {
    kr.push_back(double(i) / K);
    kv.push_back(val(rng));
  }
  std::vector<double> h(g.node_count());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double r = g[i];
    std::size_t s = std::min<std::size_t>(K - 1, static_cast<std::size_t>(r * K));
    const double f = (r - kr[s]) / (kr[s + 1] - kr[s]);
    h[i] = kv[s] + f * (kv[s + 1] - kv[s]);
  }
  return h;
}

void chain_scenario(Context& ctx) {
  const auto& c = ctx.config;
  const auto grid = make_grid(c);
  const auto spec = c.boundary();
  FlowRun run(grid, spec, solver_options(c));
  BlowUpDetector detector(grid, c.k, DetectorOptions{c.tolerances.G_max});
  const std::array<Observer, 1> extra{detector.observer()};
  const auto series = solve_recorded(run, c.T, extra);
  ctx.write_run(run, series);

  const double band = chain_band(c.tolerances.newton_tol);
  ChainParams q{};
  q.band = band;
  ChainParams p{};
  p.kind = ChainKind::P;
  p.h1 = StationaryProfile::chi(16.0, c.k);
  p.band = band;

  bool parity = true, witnesses = true, energy_ok = true;
  std::size_t reports = 0;
  const std::size_t stride = 100;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i % stride != 0 && i + 1 != series.size()) continue;
    const auto prof = series.profile(i);
    const double E = energy(prof);
    for (const auto* params : {&q, &p}) {
      const auto rep = max_chain(prof, *params);
      if (!rep) continue;
      ++reports;
      parity = parity && chain_well_formed(*rep);
      witnesses = witnesses && chain_witness_valid(*rep, prof, *params);
      energy_ok = energy_ok && chain_energy_lower_bound(*rep, prof) <= E + 1e-6 * (1.0 + E);
    }
  }
  const auto qs = chain_monotonicity(series, q, stride);
  ctx.details["q_chain"] = to_json(qs);
  ctx.details["p_chain"] = to_json(chain_monotonicity(series, p, stride));
  ctx.check("chain parity", parity, std::to_string(reports) + " reports");
  ctx.check("chain witnesses", witnesses, "pattern classes hold at every witness node");
  ctx.check("chain energy bound", energy_ok, "witness transits within the profile energy");
  ctx.check("Q chain non-increasing", qs.verdict != Verdict::Fail, to_string(qs.verdict));

  const auto last = series.profile(series.size() - 1);
  std::size_t prev = 0;
  bool alpha_monotone = true;
  Json ladder = Json::array();
  for (double a = 1.0; a <= 64.0; a *= 2.0) {
    ChainParams pa = p;
    pa.h1 = StationaryProfile::chi(a, c.k);
    const auto rep = max_chain(last, pa);
    const std::size_t M = rep ? rep->max_length : 0;
    if (rep && M < prev) alpha_monotone = false;
    if (rep) prev = M;
    ladder.push_back({{"alpha", a}, {"M", M}});
  }
  ctx.details["p_alpha_ladder"] = ladder;
  ctx.check("P chain non-decreasing in alpha", alpha_monotone, "alpha in 1..64");

  std::mt19937_64 rng(c.seed);
  bool synthetic = true;
  for (int trial = 0; trial < 32; ++trial) {
    Profile prof{grid, random_knot_profile(*grid, rng), 0.0, c.k};
    for (const auto* params : {&q, &p}) {
      const auto rep = max_chain(prof, *params);
      if (rep) synthetic = synthetic && chain_witness_valid(*rep, prof, *params);
    }
  }
  ctx.check("random knot profiles", synthetic, "32 seeded profiles");
  ctx.result.scalars["q_chain_final"] = qs.lengths.empty() ? 0 : qs.lengths.back();
}

void apply_axis(RunConfig& cell, const std::string& parameter, double v) {
  if (parameter == "k") {
    cell.k = static_cast<int>(std::lround(v));
    if (cell.spec) cell.spec->k = cell.k;
  } else if (parameter == "N") {
    cell.N = static_cast<std::size_t>(std::llround(v));
  } else if (parameter == "T") {
    cell.T = v;
  } else if (parameter == "alpha" || parameter == "slope") {
    auto spec = cell.boundary();
    (parameter == "alpha" ? spec.alpha : spec.slope) = v;
    spec.check();
    cell.spec = spec;
  } else {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
}

}  // namespace

double RunConfig::grading() const { return gamma ? *gamma : default_grading(k); }

BoundaryDataSpec RunConfig::boundary() const {
  if (spec) return *spec;
  if (scenario == "global-infinity" || scenario == "comparison-demo") return BoundaryDataSpec::four_arctan(k);
  if (scenario == "finite-time-blowup" || scenario == "chain-audit") return BoundaryDataSpec::linear_ramp(k, 3.5);
  return BoundaryDataSpec::stationary_arctan(k, 1.0);
}

void RunConfig::check() const {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), scenario) == names.end()) {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }
  if (k < 1) throw ConfigError("k must be >= 1");
  if (N < RadialGrid::kMinResolution) throw ConfigError("grid N must be >= 16");
  if (gamma && *gamma < 1.0) throw ConfigError("grid gamma must be >= 1");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (spec && spec->k != k) throw ConfigError("spec k differs from config k");
  boundary().check();
  solver_options(*this).check();
  if (scenario == "sweep") {
    if (sweep.scenario == "sweep") throw ConfigError("sweep cannot nest sweeps");
    if (sweep.values.empty()) throw ConfigError("sweep needs at least one value");
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), sweep.scenario) == names.end())
      throw ConfigError("unknown sweep scenario '" + sweep.scenario + "'");
    static const std::vector<std::string> params{"k", "N", "alpha", "slope", "T"};
    if (std::find(params.begin(), params.end(), sweep.parameter) == params.end())
      throw ConfigError("unknown sweep parameter '" + sweep.parameter + "'");
  }
}

double default_horizon(const std::string& scenario) {
  if (scenario == "global-infinity") return 5.0;
  if (scenario == "finite-time-blowup" || scenario == "chain-audit") return 10.0;
  return 1.0;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"stationary",    "global-infinity", "finite-time-blowup",
                                              "comparison-demo", "chain-audit",    "sweep"};
  return names;
}

RunConfig parse_config(const Json& j) {
  try {
    RunConfig c;
    c.scenario = j.value("scenario", c.scenario);
    c.k = j.value("k", c.k);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.N = g.value("N", c.N);
      if (g.contains("gamma")) c.gamma = g.at("gamma").get<double>();
    }
    if (j.contains("spec")) {
      Json s = j.at("spec");
      if (!s.contains("k")) s["k"] = c.k;
      c.spec = boundary_spec_from_json(s);
    }
    c.T = j.value("T", c.T);
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      c.tolerances.newton_tol = t.value("newton_tol", c.tolerances.newton_tol);
      c.tolerances.tol_band = t.value("tol_band", c.tolerances.tol_band);
      c.tolerances.G_max = t.value("G_max", c.tolerances.G_max);
    }
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      auto& o = c.solver;
      if (s.contains("scheme")) o.scheme = spatial_scheme_from_string(s.at("scheme").get<std::string>());
      o.dt_initial = s.value("dt_initial", o.dt_initial);
      o.dt_min = s.value("dt_min", o.dt_min);
      o.dt_max = s.value("dt_max", o.dt_max);
      o.max_newton_iterations = s.value("max_newton_iterations", o.max_newton_iterations);
      o.growth = s.value("growth", o.growth);
      o.max_change = s.value("max_change", o.max_change);
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", c.jobs);
    c.snapshot_every = j.value("snapshot_every", c.snapshot_every);
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      c.sweep.scenario = s.value("scenario", c.sweep.scenario);
      c.sweep.parameter = s.value("parameter", c.sweep.parameter);
      c.sweep.values = s.value("values", std::vector<double>{});
    }
    if (!j.contains("T")) c.T = default_horizon(c.scenario == "sweep" ? c.sweep.scenario : c.scenario);
    c.check();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["scenario"] = c.scenario;
  j["k"] = c.k;
  j["grid"] = Json{{"N", c.N}, {"gamma", c.grading()}};
  j["spec"] = to_json(c.boundary());
  j["T"] = c.T;
  j["tolerances"] = Json{{"newton_tol", c.tolerances.newton_tol}, {"tol_band", c.tolerances.tol_band},
                         {"G_max", c.tolerances.G_max}};
  j["solver"] = Json{{"scheme", to_string(c.solver.scheme)},   {"dt_initial", c.solver.dt_initial},
                     {"dt_min", c.solver.dt_min},               {"dt_max", c.solver.dt_max},
                     {"max_newton_iterations", c.solver.max_newton_iterations},
                     {"growth", c.solver.growth},               {"max_change", c.solver.max_change}};
  j["seed"] = c.seed;
  j["snapshot_every"] = c.snapshot_every;
  if (c.scenario == "sweep") {
    j["sweep"] = Json{{"scenario", c.sweep.scenario}, {"parameter", c.sweep.parameter}, {"values", c.sweep.values}};
  }
  return j;
}

bool ScenarioResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ScenarioResult::summary() const {
  std::string out = "scenario: " + scenario + "\n";
  for (const auto& c : checks) out += (c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
  out += std::string("result: ") + (passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

ScenarioResult run_scenario(const RunConfig& config) {
  config.check();
  if (config.scenario == "sweep") return run_sweep(config);
  Context ctx(config);
  if (config.scenario == "stationary") stationary_scenario(ctx);
  else if (config.scenario == "global-infinity") global_scenario(ctx);
  else if (config.scenario == "finite-time-blowup") blowup_scenario(ctx);
  else if (config.scenario == "comparison-demo") comparison_scenario(ctx);
  else if (config.scenario == "chain-audit") chain_scenario(ctx);
  return ctx.finish();
}

ScenarioResult run_sweep(const RunConfig& config) {
  const auto& axis = config.sweep;
  const std::size_t n = axis.values.size();
  std::vector<std::optional<ScenarioResult>> results(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      RunConfig cell = config;
      cell.scenario = axis.scenario;
      try {
        apply_axis(cell, axis.parameter, axis.values[i]);
        if (!config.output_dir.empty()) cell.output_dir = config.output_dir / ("cell_" + std::to_string(i));
        results[i] = run_scenario(cell);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(1, config.jobs), std::max<std::size_t>(1, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Context ctx(config);
  Json table = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row{{"index", i}, {axis.parameter, axis.values[i]}};
    const std::string label = axis.parameter + "=" + fmt(axis.values[i]);
    if (results[i]) {
      row["passed"] = results[i]->passed();
      row["scalars"] = results[i]->scalars;
      ctx.check(label, results[i]->passed(), axis.scenario);
    } else {
      row["passed"] = false;
      row["error"] = errors[i];
      ctx.check(label, false, errors[i]);
    }
    table.push_back(row);
  }
  ctx.details["cells"] = table;

  if (axis.parameter == "N") {
    Json orders = Json::array();
    for (std::size_t i = 1; i < n; ++i) {
      if (!results[i] || !results[i - 1] || !results[i]->scalars.contains("tau_residual")) continue;
      const double e0 = results[i - 1]->scalars["tau_residual"].get<double>();
      const double e1 = results[i]->scalars["tau_residual"].get<double>();
      orders.push_back(std::log(e0 / e1) / std::log(axis.values[i] / axis.values[i - 1]));
    }
    ctx.details["observed_orders"] = orders;
  }
  return ctx.finish();
}

}  // namespace eqflow
