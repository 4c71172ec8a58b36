#include "eqflow/principles.hpp"

#include <algorithm>
#include <cmath>

#include "eqflow/errors.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> merged_times(const SnapshotSeries& a, const SnapshotSeries& b) {
  const double lo = std::max(a.front().time, b.front().time);
  const double hi = std::min(a.back().time, b.back().time);
  if (lo > hi) throw UsageError("comparison_check: series share no time range");
  std::vector<double> times;
  for (const auto* s : {&a, &b}) {
    for (const auto& snap : s->snapshots) {
      if (snap.time >= lo && snap.time <= hi) times.push_back(snap.time);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

void finish(OrderingReport& rep) {
  if (rep.pairs_checked == 0) {
    rep.verdict = Verdict::Inapplicable;
    if (rep.note.empty()) rep.note = "no samples";
    return;
  }
  rep.verdict = rep.max_violation <= rep.tolerance ? Verdict::Pass : Verdict::Fail;
}

ChainReport make_report(ChainKind kind, const Profile& profile, std::vector<std::size_t> taken, std::size_t modulus,
                        std::string refs) {
  std::size_t M = taken.size();
  while (M > 0 && M % modulus != 1) --M;
  taken.resize(M);
  ChainReport r;
  r.kind = kind;
  r.time = profile.time;
  r.max_length = M;
  r.witness_nodes = taken;
  for (auto i : taken) r.witness.push_back((*profile.grid)[i]);
  r.references = std::move(refs);
  return r;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "?";
}

std::string to_string(ChainKind kind) { return kind == ChainKind::P ? "P" : "Q"; }

double comparison_tolerance(const RadialGrid& grid, double dt_max, double C) {
  const double dr = grid.max_spacing();
  return C * (dr * dr + dt_max);
}

OrderingReport comparison_check(const SnapshotSeries& sub, const SnapshotSeries& super, double tol) {
  if (!sub.grid || !super.grid || !(*sub.grid == *super.grid)) {
    throw UsageError("comparison_check: runs live on different grids");
  }
  if (sub.empty() || super.empty()) throw UsageError("comparison_check: empty series");
  OrderingReport rep;
  rep.tolerance = tol;
  const auto& g = *sub.grid;
  for (double t : merged_times(sub, super)) {
    const auto a = sub.values_at(t);
    const auto b = super.values_at(t);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = a[i] - b[i];
      if (v > rep.max_violation) {
        rep.max_violation = v;
        rep.worst_time = t;
        rep.worst_radius = g[i];
      }
      ++rep.pairs_checked;
    }
  }
  finish(rep);
  return rep;
}

OrderingReport self_comparison_check(const SnapshotSeries& series, double tau, double tol) {
  if (series.empty()) throw UsageError("self_comparison_check: empty series");
  if (!(tau > 0.0)) throw UsageError("self_comparison_check: tau must be positive");
  OrderingReport rep;
  rep.tolerance = tol;
  const auto& g = *series.grid;
  const double t0 = series.front().time;
  const auto& first = series.front().values;

  for (const auto& s : series.snapshots) {
    if (s.time > t0 + tau) break;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (std::abs(s.values[i] - first[i]) > kPi) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "initial window moves by more than pi";
        return rep;
      }
    }
  }
  for (const auto& s : series.snapshots) {
    if (s.time < t0 + tau) continue;
    const auto prev = series.values_at(s.time - tau);
    if (std::abs(s.values.back() - prev.back()) > kPi) {
      rep.verdict = Verdict::Inapplicable;
      rep.note = "boundary trace moves by more than pi";
      return rep;
    }
  }

  for (const auto& s : series.snapshots) {
    if (s.time < t0 + tau) continue;
    const auto prev = series.values_at(s.time - tau);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double v = std::abs(s.values[i] - prev[i]) - kPi;
      if (v > rep.max_violation) {
        rep.max_violation = v;
        rep.worst_time = s.time;
        rep.worst_radius = g[i];
      }
      ++rep.pairs_checked;
    }
  }
  finish(rep);
  return rep;
}

double chain_band(double newton_tol) { return 1e-6 + 10.0 * newton_tol; }

std::optional<ChainReport> max_chain_P(const Profile& profile, const StationaryProfile& h1, double h2_level,
                                       double band) {
  const auto& g = *profile.grid;
  const auto& h = profile.values;
  const auto ref = sample_stationary(h1, g);
  if (!(h.front() < ref.front()) || !(h.back() > ref.back())) return std::nullopt;

  std::vector<std::size_t> taken;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const bool below = h[i] < ref[i] - band;
    const bool between = h[i] > ref[i] + band && h[i] < h2_level - band;
    const bool above = h[i] > h2_level + band;
    const std::size_t phase = taken.size() % 4;
    const bool match = phase == 0 ? below : phase == 2 ? above : between;
    if (match) taken.push_back(i);
  }
  if (taken.empty()) return std::nullopt;
  return make_report(ChainKind::P, profile, std::move(taken), 4,
                     to_string(h1.family) + "(alpha=" + std::to_string(h1.alpha) + "), level " + std::to_string(h2_level));
}

std::optional<ChainReport> max_chain_Q(const Profile& profile, double h1_level, double h2_level, double band) {
  const auto& h = profile.values;
  if (!(h.front() < h1_level)) return std::nullopt;
  std::vector<std::size_t> taken;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const bool below = h[i] < h1_level - band;
    const bool above = h[i] > h2_level + band;
    if (taken.size() % 2 == 0 ? below : above) taken.push_back(i);
  }
  if (taken.empty()) return std::nullopt;
  return make_report(ChainKind::Q, profile, std::move(taken), 2,
                     "levels " + std::to_string(h1_level) + ", " + std::to_string(h2_level));
}

std::optional<ChainReport> max_chain(const Profile& profile, const ChainParams& params) {
  if (params.kind == ChainKind::P) return max_chain_P(profile, params.h1, params.h2_level, params.band);
  return max_chain_Q(profile, params.h1_level, params.h2_level, params.band);
}

ChainSeries chain_monotonicity(const SnapshotSeries& series, const ChainParams& params, std::size_t stride) {
  ChainSeries out;
  if (stride == 0) stride = 1;
  std::size_t min_length = std::numeric_limits<std::size_t>::max();
  double min_time = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i % stride != 0 && i + 1 != series.size()) continue;
    const auto rep = max_chain(series.profile(i), params);
    const double t = series.snapshots[i].time;
    out.times.push_back(t);
    out.lengths.push_back(rep ? rep->max_length : 0);
    if (!rep) continue;
    any = true;
    if (rep->max_length > min_length) out.increases.emplace_back(min_time, t);
    if (rep->max_length < min_length) {
      min_length = rep->max_length;
      min_time = t;
    }
  }
  if (!any) out.verdict = Verdict::Inapplicable;
  else out.verdict = out.increases.empty() ? Verdict::Pass : Verdict::Fail;
  return out;
}

bool chain_well_formed(const ChainReport& report) {
  const std::size_t M = report.max_length;
  if (M < 1 || report.witness.size() != M || report.witness_nodes.size() != M) return false;
  if (report.kind == ChainKind::P && M % 4 != 1) return false;
  if (report.kind == ChainKind::Q && M % 2 != 1) return false;
  for (std::size_t i = 1; i < M; ++i) {
    if (!(report.witness[i] > report.witness[i - 1])) return false;
  }
  return true;
}

bool chain_witness_valid(const ChainReport& report, const Profile& profile, const ChainParams& params) {
  if (!chain_well_formed(report)) return false;
  const double eps = params.band;
  for (std::size_t j = 0; j < report.witness_nodes.size(); ++j) {
    const std::size_t i = report.witness_nodes[j];
    const double h = profile.values[i];
    bool ok = false;
    if (report.kind == ChainKind::Q) {
      ok = j % 2 == 0 ? h < params.h1_level - eps : h > params.h2_level + eps;
    } else {
      const double ref = eval_stationary(params.h1, (*profile.grid)[i]).value;
      switch (j % 4) {
        case 0: ok = h < ref - eps; break;
        case 2: ok = h > params.h2_level + eps; break;
        default: ok = h > ref + eps && h < params.h2_level - eps; break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

double chain_energy_lower_bound(const ChainReport& report, const Profile& profile) {
  double sum = 0.0;
  for (std::size_t i = 1; i < report.witness_nodes.size(); ++i) {
    sum += std::abs(std::cos(profile.values[report.witness_nodes[i]]) -
                    std::cos(profile.values[report.witness_nodes[i - 1]]));
  }
  return 2.0 * kPi * profile.k * sum;
}

MaximumReport discrete_maximum_check(const SnapshotSeries& series, double level, double tol, double t_min) {
  MaximumReport rep;
  rep.level = level;
  const auto& g = *series.grid;
  bool any = false;
  for (const auto& s : series.snapshots) {
    if (s.time < t_min) continue;
    const auto& h = s.values;
    const bool flat = std::all_of(h.begin(), h.end(), [&](double v) { return std::abs(std::abs(v) - level) <= tol; });
    if (flat) continue;
    any = true;
    const double boundary = std::max(std::abs(h.front()), std::abs(h.back()));
    rep.max_boundary = std::max(rep.max_boundary, boundary);
    const double threshold = boundary < level - tol ? level - tol : level;
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
      const double a = std::abs(h[i]);
      if (a > rep.max_interior) {
        rep.max_interior = a;
        rep.worst_time = s.time;
        rep.worst_radius = g[i];
      }
      if (a >= threshold) rep.verdict = Verdict::Fail;
    }
  }
  if (!any) rep.verdict = Verdict::Pass;
  rep.min_margin = level - rep.max_interior;
  return rep;
}

}  // namespace eqflow
