#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eqflow/boundary.hpp"
#include "eqflow/flow.hpp"
#include "eqflow/io.hpp"

namespace eqflow {

struct Tolerances {
  double newton_tol = 1e-10;
  double tol_band = 1e-6;
  double G_max = 1e6;
};

struct SweepAxis {
  std::string scenario = "stationary";
  std::string parameter = "k";  ///< k, N, alpha, slope or T
  std::vector<double> values;
};

struct RunConfig {
  std::string scenario = "stationary";
  int k = 1;
  std::size_t N = 512;
  std::optional<double> gamma;  ///< default_grading(k) when unset
  std::optional<BoundaryDataSpec> spec;  ///< scenario default when unset
  double T = 1.0;
  Tolerances tolerances;
  SolverOptions solver;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  /// Every n-th accepted step goes to snapshots.csv (the final state always does).
  std::size_t snapshot_every = 10;
  SweepAxis sweep;

  double grading() const;
  /// Configured spec, or the scenario's canonical data for this k.
  BoundaryDataSpec boundary() const;
  void check() const;
};

const std::vector<std::string>& scenario_names();

/// T used when a config leaves it out: 5 for global-infinity, 10 for the blow-up runs, else 1.
double default_horizon(const std::string& scenario);

/// Keys: scenario, k, grid{N,gamma}, spec{...}, T, tolerances{newton_tol,tol_band,G_max},
/// solver{...}, output_dir, seed, jobs, snapshot_every, sweep{scenario,parameter,values}.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::filesystem::path& path);
Json config_to_json(const RunConfig& config);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<Check> checks;
  Json report;   ///< written to report.json
  Json scalars;  ///< key numbers aggregated by sweeps

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
  std::string summary() const;
};

/**
 * Runs the configured scenario and writes its artifacts into config.output_dir
 * (snapshots.csv, events.jsonl, energy.csv, report.json, summary.txt).
 * An empty output_dir skips writing.
 */
ScenarioResult run_scenario(const RunConfig& config);

/// Runs sweep.scenario for every value of sweep.parameter on `jobs` threads.
ScenarioResult run_sweep(const RunConfig& config);

}  // namespace eqflow
