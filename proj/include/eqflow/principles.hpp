#pragma once

#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "eqflow/profile.hpp"
#include "eqflow/stationary.hpp"

namespace eqflow {

enum class Verdict { Pass, Fail, Inapplicable };

std::string to_string(Verdict v);

/// Worst violation of sub <= super (or of a two-sided band) over a space-time sample.
struct OrderingReport {
  Verdict verdict = Verdict::Pass;
  std::size_t pairs_checked = 0;
  double max_violation = -std::numeric_limits<double>::infinity();
  double worst_time = 0.0;
  double worst_radius = 0.0;
  double tolerance = 0.0;
  std::string note;

  bool ordered() const { return verdict == Verdict::Pass; }
};

/// 10 (dr_max^2 + dt_max).
double comparison_tolerance(const RadialGrid& grid, double dt_max, double C = 10.0);

/**
 * Checks sub <= super + tol at every node and at every snapshot time of
 * either series inside the common time range; the other series is
 * interpolated linearly in time. Throws UsageError if the grids differ.
 */
OrderingReport comparison_check(const SnapshotSeries& sub, const SnapshotSeries& super, double tol);

/**
 * h(r,t-tau) - pi <= h(r,t) <= h(r,t-tau) + pi for every snapshot with t >= tau.
 * Inapplicable when |h(r,s) - h(r,0)| > pi for some recorded s <= tau, or when
 * the boundary trace moves by more than pi over a window of length tau.
 * max_violation is the largest amount by which |h(t) - h(t-tau)| exceeds pi.
 */
OrderingReport self_comparison_check(const SnapshotSeries& series, double tau, double tol);

enum class ChainKind { P, Q };

std::string to_string(ChainKind kind);

struct ChainReport {
  ChainKind kind = ChainKind::P;
  double time = 0.0;
  std::size_t max_length = 0;
  std::vector<std::size_t> witness_nodes;
  std::vector<double> witness;
  std::string references;
};

/// 1e-6 + 10 newton_tol.
double chain_band(double newton_tol = 1e-10);

/**
 * Longest M = 1 (mod 4) with nodes below h1, strictly between h1 and h2,
 * above h2, strictly between, ... (greedy left-to-right sweep). nullopt when
 * h(0) >= h1(0) or h(1) <= h1(1).
 */
std::optional<ChainReport> max_chain_P(const Profile& profile, const StationaryProfile& h1,
                                       double h2_level = std::numbers::pi, double band = chain_band());

/// Longest odd M alternating below h1_level / above h2_level. nullopt when h(0) >= h1_level.
std::optional<ChainReport> max_chain_Q(const Profile& profile, double h1_level = std::numbers::pi / 2,
                                       double h2_level = std::numbers::pi, double band = chain_band());

struct ChainParams {
  ChainKind kind = ChainKind::Q;
  StationaryProfile h1 = StationaryProfile::chi(1.0, 1);
  double h1_level = std::numbers::pi / 2;
  double h2_level = std::numbers::pi;
  double band = chain_band();
};

std::optional<ChainReport> max_chain(const Profile& profile, const ChainParams& params);

struct ChainSeries {
  Verdict verdict = Verdict::Pass;
  std::vector<double> times;
  std::vector<std::size_t> lengths;  ///< 0 where the chain was inapplicable
  std::vector<std::pair<double, double>> increases;
};

/// M(t2) <= M(t1) for t1 < t2 over every stride-th snapshot (always including the last).
ChainSeries chain_monotonicity(const SnapshotSeries& series, const ChainParams& params, std::size_t stride = 1);

/// Chain parity and strictly increasing witness.
bool chain_well_formed(const ChainReport& report);

/// Every witness node satisfies its pattern class (below, between, above, ...).
bool chain_witness_valid(const ChainReport& report, const Profile& profile, const ChainParams& params);

/// 2 pi k sum |cos h(r_i) - cos h(r_{i+1})| over the witness, a lower bound for the energy.
double chain_energy_lower_bound(const ChainReport& report, const Profile& profile);

struct MaximumReport {
  Verdict verdict = Verdict::Pass;
  double level = 0.0;
  double max_interior = 0.0;     ///< max |h| over interior nodes and checked times
  double min_margin = 0.0;       ///< level - max_interior
  double max_boundary = 0.0;     ///< max |h| at r = 0, r = 1 over the checked times
  double worst_time = 0.0;
  double worst_radius = 0.0;
};

/**
 * Flags interior |h| >= level - tol at t >= t_min while the boundary values
 * stay strictly below level - tol. Snapshots identically equal to the level
 * are skipped.
 */
MaximumReport discrete_maximum_check(const SnapshotSeries& series, double level, double tol = 1e-9,
                                     double t_min = 0.0);

}  // namespace eqflow
