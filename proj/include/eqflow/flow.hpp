#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eqflow/boundary.hpp"
#include "eqflow/profile.hpp"
#include "eqflow/spatial.hpp"
#include "eqflow/variational.hpp"

namespace eqflow {

/// Spatial operator used inside the implicit step.
enum class SpatialScheme {
  Variational,  ///< energy-based, exact discrete arctan equilibria (default)
  Central       ///< three-point central differences, same as evaluate_tau
};

std::string to_string(SpatialScheme scheme);
SpatialScheme spatial_scheme_from_string(const std::string& name);

struct SolverOptions {
  SpatialScheme scheme = SpatialScheme::Variational;
  double dt_initial = 1e-5;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  double newton_tol = 1e-10;
  int max_newton_iterations = 30;
  double growth = 1.2;
  /// Reject steps whose interior update exceeds this many radians (<= 0 disables).
  double max_change = 0.1;
  /// Halt with BlowUpDetected once max |h_r| exceeds this.
  double gradient_limit = 1e6;

  void check() const;
};

enum class RunStatus { Running, CompletedT, BlowUpDetected, StepFailure };

std::string to_string(RunStatus status);

struct RunEvent {
  double time;
  std::string kind;
  std::string detail;
};

class FlowRun;

enum class ObserverAction { Continue, Halt };

/// Called after every accepted step; must not mutate the run.
using Observer = std::function<ObserverAction(const FlowRun&)>;

/**
 * Backward-Euler evolution of
 *
 *   h_t = h_rr + h_r/r - k^2 sin(2h) / (2 r^2)
 *
 * with Dirichlet data h(0,t) = m*pi and h(1,t) = h0(1,t). Each step solves
 * the implicit system by Newton iteration on the tridiagonal Jacobian; steps
 * that fail to converge (or move an interior node by more than max_change)
 * are retried with half the step, and accepted steps grow dt by `growth`.
 *
 * Newton stops once the row-scaled residual |F_i| / (1 + dt |J_i|) is below
 * newton_tol and the last update is below sqrt(newton_tol).
 */
class FlowRun {
 public:
  /// Seeds the profile from the boundary data at t = 0.
  FlowRun(GridPtr grid, BoundaryDataSpec spec, SolverOptions options = {});
  /// Uses `initial` as the state; its origin is re-pinned to m*pi.
  FlowRun(Profile initial, BoundaryDataSpec spec, SolverOptions options = {});

  const Profile& profile() const { return profile_; }
  const RadialGrid& grid() const { return *profile_.grid; }
  const BoundaryDataSpec& spec() const { return spec_; }
  const SolverOptions& options() const { return options_; }
  double time() const { return profile_.time; }
  double dt() const { return dt_; }
  RunStatus status() const { return status_; }
  std::size_t step_count() const { return step_count_; }
  std::size_t rejected_steps() const { return rejected_; }
  int last_newton_iterations() const { return last_iterations_; }
  int origin_m() const { return origin_m_; }
  const std::vector<RunEvent>& event_log() const { return events_; }

  /// Current max |h_r| over the nodes.
  double max_gradient() const;

  /// One accepted step, retrying with smaller dt as needed.
  RunStatus step();

  /// Steps until time >= T (the last step lands on T), an observer halts, or a failure.
  RunStatus solve_until(double T, std::span<const Observer> observers = {});

  void log(std::string kind, std::string detail = {});

 private:
  RunStatus step_bounded(double t_limit);
  bool attempt(double dt, std::vector<double>& next, int& iterations) const;
  void assemble(std::span<const double> u, std::vector<double>& tau, VariationalOperator::Jacobian& jac) const;
  void check_gradient();

  Profile profile_;
  BoundaryDataSpec spec_;
  SolverOptions options_;
  RadialStencil stencil_;
  VariationalOperator variational_;
  int origin_m_ = 0;
  double dt_;
  RunStatus status_ = RunStatus::Running;
  std::size_t step_count_ = 0;
  std::size_t rejected_ = 0;
  int last_iterations_ = 0;
  std::vector<RunEvent> events_;
};

/// Observer appending every accepted state to `series`, which must outlive the run.
Observer recording_observer(SnapshotSeries& series);

/// Runs to T and returns the initial state plus every accepted state; `extra` observers run after recording.
SnapshotSeries solve_recorded(FlowRun& run, double T, std::span<const Observer> extra = {});

/// The theta = 0 slice of v = (e^{ik theta} sin h, cos h) plus |grad v|^2.
struct ReconstructedMap {
  int k = 1;
  std::vector<std::array<double, 3>> vectors;
  std::vector<double> gradient_energy_density;

  /// Full reconstruction at polar angle theta for node i.
  std::array<double, 3> at(std::size_t i, double theta) const;
};

/**
 * |grad v|^2 = h_r^2 + k^2 sin^2(h) / r^2. At the origin the reported value
 * is 0 for k >= 2 and 2 h_r(0)^2 for k = 1 (one-sided gradient).
 */
ReconstructedMap reconstruct_map(const Profile& profile);

/// Solves a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i; a[0] and c[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::span<const double> a, std::span<const double> b,
                                      std::span<const double> c, std::span<const double> d);

}  // namespace eqflow
