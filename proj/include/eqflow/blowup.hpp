#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqflow/flow.hpp"
#include "eqflow/profile.hpp"

namespace eqflow {

/// sup{r : h <= level + band on [0, r]}, linearly interpolated at the first crossing.
double r_plus(const Profile& profile, double level = std::numbers::pi, double band = 1e-6);

struct FrontSample {
  double time;
  double r_plus;
  double r_minus;
};

/// Records r+ (level pi) and r- (level pi/2) after every observed step.
class FrontTracker {
 public:
  void record(const Profile& profile);
  Observer observer();

  const std::vector<FrontSample>& samples() const { return samples_; }
  bool ordered() const;

 private:
  std::vector<FrontSample> samples_;
};

enum class BlowUpTrigger { GradientThreshold, StepFailure };

std::string to_string(BlowUpTrigger trigger);

struct BlowUpEvent {
  double detect_time = 0.0;
  double max_gradient = 0.0;
  std::size_t argmax_node = 0;
  double argmax_radius = 0.0;
  BlowUpTrigger trigger = BlowUpTrigger::GradientThreshold;
  double threshold = 0.0;
  /// argmax node inside the first decile of nodes at firing.
  bool concentrated = false;
  SnapshotSeries snapshots;
};

struct DetectorOptions {
  double G_max = 1e6;
  /// Also fire once the bubble core [0.158 R, 6.31 R], R = 2k/G, would hold fewer
  /// than this many nodes (0 disables the resolution cap).
  std::size_t core_nodes = 8;
  std::size_t history = 4096;
  std::size_t buffer = 64;
};

/// Largest gradient 2k/R whose core window still holds core_nodes nodes.
double resolvable_gradient(const RadialGrid& grid, int k, std::size_t core_nodes);

/// Effective firing threshold: min(G_max, resolvable_gradient) when the cap is enabled.
double detection_threshold(const RadialGrid& grid, int k, const DetectorOptions& options);

/**
 * Observer that keeps the recent accepted profiles and fires when max |h_r|
 * exceeds the detection threshold. On firing it keeps `buffer` snapshots
 * spaced geometrically in (T_detect - t), always including the last one.
 */
class BlowUpDetector {
 public:
  BlowUpDetector(GridPtr grid, int k, DetectorOptions options = {});

  double threshold() const { return threshold_; }
  ObserverAction observe(const FlowRun& run);
  /// Observer bound to this detector; the detector must outlive the run.
  Observer observer();
  /// Call after the run stops; fires on StepFailure or a run-side gradient halt.
  void finish(const FlowRun& run);

  const std::optional<BlowUpEvent>& event() const { return event_; }

 private:
  void record(const Profile& p);
  void fire(const FlowRun& run, BlowUpTrigger trigger);

  GridPtr grid_;
  int k_;
  DetectorOptions options_;
  double threshold_;
  std::deque<Snapshot> history_;
  std::optional<BlowUpEvent> event_;
};

/// Runs to T with a detector attached; returns the event if it fired.
std::optional<BlowUpEvent> detect_blowup(FlowRun& run, double T, DetectorOptions options = {});

struct BubbleFit {
  double T_n = 0.0;
  double R_n = 0.0;
  double alpha_est = 0.0;  ///< in rescaled units (rho = r / R_n)
  int sign = 1;
  int m_offset = 0;
  double sup_error = 0.0;  ///< radians
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  std::size_t window_nodes = 0;
  double max_gradient = 0.0;
};

struct BubbleOptions {
  double min_gradient = 100.0;
  double lo = 0.1 * std::numbers::pi;
  double hi = 0.9 * std::numbers::pi;
};

/**
 * R_n = 2k / max|h_r|, H(rho) = h(R_n rho). Fits m pi + sign 2 atan((alpha rho)^k)
 * on the first contiguous node window where sign (H - m pi) lies in (lo, hi).
 * Throws UsageError when max|h_r| < min_gradient, NoTransitError for an empty window.
 */
BubbleFit extract_bubble(const Profile& profile, const BubbleOptions& options = {});
BubbleFit extract_bubble(const BlowUpEvent& event, std::size_t n, const BubbleOptions& options = {});

/// (rho, H) on the nodes with r <= rho_max R_n.
std::vector<std::pair<double, double>> rescaled_profile(const Profile& profile, double R_n, double rho_max = 100.0);

struct BubbleCount {
  std::size_t count = 0;
  std::vector<std::pair<double, double>> intervals;
};

/**
 * Upward transits across the bands [m pi + pi/4, m pi + 3pi/4] inside
 * [0, r_limit]: a transit runs from the last node at or below the band to the
 * first node at or above it.
 */
BubbleCount bubble_count(const Profile& profile, double r_limit = 1.0);

struct OriginLimit {
  bool conclusive = false;
  int nearest_m = 0;
  double max_deviation = 0.0;       ///< max |h - nearest_m pi| over the window
  double relative_deviation = 0.0;  ///< max_deviation / pi
  std::size_t nodes = 0;
};

/// Nodes in [10 R_n, 100 R_n] n [0, 1]; inconclusive when none fall there.
OriginLimit origin_limit_check(const Profile& profile, double R_n);
/// Uses R_n = 2k / max|h_r|.
OriginLimit origin_limit_check(const Profile& profile);

}  // namespace eqflow
