#pragma once

#include <memory>
#include <span>
#include <vector>

#include "eqflow/grid.hpp"

namespace eqflow {

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Inclination coordinate h sampled on a grid at one instant.
struct Profile {
  GridPtr grid;
  std::vector<double> values;
  double time = 0.0;
  int k = 1;

  std::span<const double> nodes() const { return grid->nodes(); }
  std::size_t size() const { return values.size(); }
};

/// One accepted state of a run; the grid lives in the owning series.
struct Snapshot {
  double time = 0.0;
  std::vector<double> values;
};

/// Time-ordered snapshots sharing one grid.
struct SnapshotSeries {
  GridPtr grid;
  int k = 1;
  std::vector<Snapshot> snapshots;

  bool empty() const { return snapshots.empty(); }
  std::size_t size() const { return snapshots.size(); }
  const Snapshot& front() const { return snapshots.front(); }
  const Snapshot& back() const { return snapshots.back(); }

  Profile profile(std::size_t i) const { return Profile{grid, snapshots[i].values, snapshots[i].time, k}; }

  /// Linear interpolation in time; clamps outside the recorded range.
  std::vector<double> values_at(double t) const;
};

/// Constant-in-time series of a fixed profile at the given times.
SnapshotSeries frozen_series(GridPtr grid, int k, std::vector<double> values, std::span<const double> times);

}  // namespace eqflow
