#include "eqflow/blowup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "eqflow/errors.hpp"
#include "eqflow/spatial.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

struct GradientPeak {
  double value;
  std::size_t node;
  double slope;
};

GradientPeak peak_gradient(const Profile& p) {
  const auto hr = nodal_gradient(*p.grid, p.values);
  const std::size_t i = argmax_abs(hr);
  return {std::abs(hr[i]), i, hr[i]};
}

std::size_t count_in(std::span<const double> nodes, double a, double b) {
  const auto lo = std::lower_bound(nodes.begin(), nodes.end(), a);
  const auto hi = std::upper_bound(nodes.begin(), nodes.end(), b);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

}  // namespace

double r_plus(const Profile& profile, double level, double band) {
  const auto& g = *profile.grid;
  const auto& h = profile.values;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] <= level + band) continue;
    if (i == 0) return 0.0;
    const double f = std::clamp((level - h[i - 1]) / (h[i] - h[i - 1]), 0.0, 1.0);
    return g[i - 1] + f * g.spacing(i - 1);
  }
  return 1.0;
}

void FrontTracker::record(const Profile& profile) {
  samples_.push_back({profile.time, r_plus(profile, kPi), r_plus(profile, kPi / 2)});
}

Observer FrontTracker::observer() {
  return [this](const FlowRun& run) {
    record(run.profile());
    return ObserverAction::Continue;
  };
}

bool FrontTracker::ordered() const {
  return std::all_of(samples_.begin(), samples_.end(), [](const FrontSample& s) {
    return 0.0 <= s.r_minus && s.r_minus <= s.r_plus && s.r_plus <= 1.0;
  });
}

std::string to_string(BlowUpTrigger trigger) {
  return trigger == BlowUpTrigger::GradientThreshold ? "GradientThreshold" : "StepFailure";
}

double resolvable_gradient(const RadialGrid& grid, int k, std::size_t core_nodes) {
  const double a = std::pow(std::tan(0.05 * kPi), 1.0 / k);
  const double b = std::pow(std::tan(0.45 * kPi), 1.0 / k);
  const auto nodes = grid.nodes();
  double R = 1.0;
  double last_ok = std::numeric_limits<double>::infinity();
  while (R > 1e-14) {
    if (count_in(nodes, a * R, b * R) < core_nodes) break;
    last_ok = R;
    R *= 0.98;
  }
  return 2.0 * k / last_ok;
}

double detection_threshold(const RadialGrid& grid, int k, const DetectorOptions& options) {
  if (options.core_nodes == 0) return options.G_max;
  return std::min(options.G_max, resolvable_gradient(grid, k, options.core_nodes));
}

BlowUpDetector::BlowUpDetector(GridPtr grid, int k, DetectorOptions options)
    : grid_(std::move(grid)), k_(k), options_(options), threshold_(detection_threshold(*grid_, k, options)) {
  if (options_.buffer < 2) throw ConfigError("blow-up buffer needs at least 2 snapshots");
  if (options_.history < options_.buffer) options_.history = options_.buffer;
}

void BlowUpDetector::record(const Profile& p) {
  if (!history_.empty() && history_.back().time == p.time) return;
  history_.push_back({p.time, p.values});
  while (history_.size() > options_.history) history_.pop_front();
}

ObserverAction BlowUpDetector::observe(const FlowRun& run) {
  if (event_) return ObserverAction::Halt;
  record(run.profile());
  if (run.max_gradient() > threshold_) {
    fire(run, BlowUpTrigger::GradientThreshold);
    return ObserverAction::Halt;
  }
  return ObserverAction::Continue;
}

Observer BlowUpDetector::observer() {
  return [this](const FlowRun& run) { return observe(run); };
}

void BlowUpDetector::finish(const FlowRun& run) {
  if (event_) return;
  if (run.status() == RunStatus::StepFailure) {
    record(run.profile());
    fire(run, BlowUpTrigger::StepFailure);
  } else if (run.status() == RunStatus::BlowUpDetected) {
    record(run.profile());
    fire(run, BlowUpTrigger::GradientThreshold);
  }
}

void BlowUpDetector::fire(const FlowRun& run, BlowUpTrigger trigger) {
  BlowUpEvent ev;
  ev.trigger = trigger;
  ev.threshold = threshold_;
  ev.detect_time = run.time();
  const auto peak = peak_gradient(run.profile());
  ev.max_gradient = peak.value;
  ev.argmax_node = peak.node;
  ev.argmax_radius = run.grid()[peak.node];
  ev.concentrated = peak.node <= grid_->resolution() / 10;

  const std::size_t L = history_.size();
  std::set<std::size_t> keep{L - 1};
  if (L <= options_.buffer) {
    for (std::size_t j = 0; j < L; ++j) keep.insert(j);
  } else {
    const double Td = history_.back().time;
    const double d_max = Td - history_.front().time;
    const double d_min = Td - history_[L - 2].time;
    const std::size_t S = options_.buffer - 1;
    for (std::size_t q = 0; q < S; ++q) {
      const double target = std::log(d_max) + (std::log(d_min) - std::log(d_max)) * double(q) / double(S - 1);
      std::size_t best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j + 1 < L; ++j) {
        const double d = std::abs(std::log(Td - history_[j].time) - target);
        if (d < best_dist) {
          best_dist = d;
          best = j;
        }
      }
      keep.insert(best);
    }
  }
  ev.snapshots.grid = grid_;
  ev.snapshots.k = k_;
  for (auto j : keep) ev.snapshots.snapshots.push_back(history_[j]);
  event_ = std::move(ev);
}

std::optional<BlowUpEvent> detect_blowup(FlowRun& run, double T, DetectorOptions options) {
  BlowUpDetector det(run.profile().grid, run.profile().k, options);
  det.observe(run);
  const std::array<Observer, 1> obs{det.observer()};
  if (!det.event()) run.solve_until(T, obs);
  det.finish(run);
  return det.event();
}

BubbleFit extract_bubble(const Profile& profile, const BubbleOptions& options) {
  const auto& g = *profile.grid;
  const auto& h = profile.values;
  const int k = profile.k;
  const auto peak = peak_gradient(profile);
  if (peak.value < options.min_gradient) {
    throw UsageError("extract_bubble: max gradient " + std::to_string(peak.value) + " below " +
                     std::to_string(options.min_gradient));
  }
  BubbleFit fit;
  fit.T_n = profile.time;
  fit.max_gradient = peak.value;
  fit.R_n = 2.0 * k / peak.value;
  fit.m_offset = static_cast<int>(std::lround(h.front() / kPi));
  fit.sign = peak.slope >= 0.0 ? 1 : -1;
  const double base = fit.m_offset * kPi;

  std::size_t first = 0, last = 0;
  bool inside = false;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const double y = fit.sign * (h[i] - base);
    const bool in = y > options.lo && y < options.hi;
    if (in && !inside && first == 0) {
      first = i;
      inside = true;
    }
    if (inside) {
      if (!in) break;
      last = i;
    }
  }
  if (first == 0) throw NoTransitError("extract_bubble: no node inside the transit window");

  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const double y = fit.sign * (h[i] - base);
    sum += std::log(std::tan(0.5 * y)) / k - std::log(g[i] / fit.R_n);
  }
  fit.window_nodes = last - first + 1;
  fit.alpha_est = std::exp(sum / double(fit.window_nodes));
  fit.rho_lo = g[first] / fit.R_n;
  fit.rho_hi = g[last] / fit.R_n;
  for (std::size_t i = first; i <= last; ++i) {
    const double model = base + fit.sign * 2.0 * std::atan(std::pow(fit.alpha_est * g[i] / fit.R_n, k));
    fit.sup_error = std::max(fit.sup_error, std::abs(h[i] - model));
  }
  return fit;
}

BubbleFit extract_bubble(const BlowUpEvent& event, std::size_t n, const BubbleOptions& options) {
  if (n >= event.snapshots.size()) throw UsageError("extract_bubble: snapshot index out of range");
  return extract_bubble(event.snapshots.profile(n), options);
}

std::vector<std::pair<double, double>> rescaled_profile(const Profile& profile, double R_n, double rho_max) {
  std::vector<std::pair<double, double>> out;
  const auto& g = *profile.grid;
  for (std::size_t i = 0; i < profile.size() && g[i] <= rho_max * R_n; ++i) {
    out.emplace_back(g[i] / R_n, profile.values[i]);
  }
  return out;
}

BubbleCount bubble_count(const Profile& profile, double r_limit) {
  const auto& g = *profile.grid;
  const auto& h = profile.values;
  std::size_t n = 0;
  while (n < h.size() && g[n] <= r_limit) ++n;
  BubbleCount out;
  if (n == 0) return out;
  const auto [lo_it, hi_it] = std::minmax_element(h.begin(), h.begin() + n);
  const int m_lo = static_cast<int>(std::floor(*lo_it / kPi)) - 1;
  const int m_hi = static_cast<int>(std::ceil(*hi_it / kPi)) + 1;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double lo = m * kPi + kPi / 4;
    const double hi = m * kPi + 3 * kPi / 4;
    std::optional<std::size_t> last_low;
    bool low = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (h[i] <= lo) {
        low = true;
        last_low = i;
      } else if (h[i] >= hi) {
        if (low && last_low) out.intervals.emplace_back(g[*last_low], g[i]);
        low = false;
      }
    }
  }
  std::sort(out.intervals.begin(), out.intervals.end());
  out.count = out.intervals.size();
  return out;
}

OriginLimit origin_limit_check(const Profile& profile, double R_n) {
  const auto& g = *profile.grid;
  const auto& h = profile.values;
  OriginLimit out;
  double sum = 0.0;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (g[i] >= 10.0 * R_n && g[i] <= std::min(1.0, 100.0 * R_n)) {
      idx.push_back(i);
      sum += h[i];
    }
  }
  out.nodes = idx.size();
  if (idx.empty()) return out;
  out.conclusive = true;
  out.nearest_m = static_cast<int>(std::lround(sum / double(idx.size()) / kPi));
  for (auto i : idx) out.max_deviation = std::max(out.max_deviation, std::abs(h[i] - out.nearest_m * kPi));
  out.relative_deviation = out.max_deviation / kPi;
  return out;
}

OriginLimit origin_limit_check(const Profile& profile) {
  const double G = peak_gradient(profile).value;
  if (!(G > 0.0)) {
    OriginLimit out;
    const double mean = std::accumulate(profile.values.begin(), profile.values.end(), 0.0) / double(profile.size());
    out.conclusive = true;
    out.nearest_m = static_cast<int>(std::lround(mean / kPi));
    for (double v : profile.values) out.max_deviation = std::max(out.max_deviation, std::abs(v - out.nearest_m * kPi));
    out.relative_deviation = out.max_deviation / kPi;
    out.nodes = profile.size();
    return out;
  }
  return origin_limit_check(profile, 2.0 * profile.k / G);
}

}  // namespace eqflow
