#include "eqflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eqflow/errors.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

int pinned_origin(const BoundaryDataSpec& spec) {
  const auto m = origin_multiple(spec, 0.0);
  if (!m) throw ConfigError("boundary data must vanish mod pi at the origin");
  return *m;
}

}  // namespace

void SolverOptions::check() const {
  if (!(dt_min > 0.0) || !(dt_max >= dt_min) || !(dt_initial > 0.0)) {
    throw ConfigError("solver needs 0 < dt_min <= dt_max and dt_initial > 0");
  }
  if (!(newton_tol > 0.0) || max_newton_iterations < 1) throw ConfigError("bad Newton settings");
  if (!(growth >= 1.0)) throw ConfigError("dt growth factor must be >= 1");
  if (!(gradient_limit > 0.0)) throw ConfigError("gradient limit must be positive");
}

std::string to_string(SpatialScheme scheme) {
  return scheme == SpatialScheme::Central ? "central" : "variational";
}

SpatialScheme spatial_scheme_from_string(const std::string& name) {
  if (name == "variational") return SpatialScheme::Variational;
  if (name == "central") return SpatialScheme::Central;
  throw ConfigError("unknown spatial scheme '" + name + "'");
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Running: return "Running";
    case RunStatus::CompletedT: return "CompletedT";
    case RunStatus::BlowUpDetected: return "BlowUpDetected";
    case RunStatus::StepFailure: return "StepFailure";
  }
  return "Running";
}

FlowRun::FlowRun(GridPtr grid, BoundaryDataSpec spec, SolverOptions options)
    : FlowRun(
          [&] {
            Profile p{grid, {}, 0.0, spec.k};
            p.values.reserve(grid->node_count());
            for (double r : grid->nodes()) p.values.push_back(evaluate_boundary(spec, r, 0.0));
            return p;
          }(),
          spec, options) {}

FlowRun::FlowRun(Profile initial, BoundaryDataSpec spec, SolverOptions options)
    : profile_(std::move(initial)),
      spec_(std::move(spec)),
      options_(options),
      stencil_(*profile_.grid),
      variational_(*profile_.grid, profile_.k),
      dt_(0.0) {
  spec_.check();
  options_.check();
  if (profile_.values.size() != profile_.grid->node_count()) throw ConfigError("initial profile does not match grid");
  if (profile_.k != spec_.k) throw ConfigError("profile and boundary data disagree on k");
  for (double v : profile_.values) {
    if (!std::isfinite(v)) throw ConfigError("initial profile has non-finite values");
  }
  origin_m_ = pinned_origin(spec_);
  profile_.values.front() = origin_m_ * kPi;
  variational_ = VariationalOperator(*profile_.grid, profile_.k, origin_m_);
  dt_ = std::clamp(options_.dt_initial, options_.dt_min, options_.dt_max);
  log("start", "N=" + std::to_string(grid().resolution()) + " k=" + std::to_string(spec_.k));
  check_gradient();
}

double FlowRun::max_gradient() const { return sup_norm(nodal_gradient(grid(), profile_.values)); }

void FlowRun::log(std::string kind, std::string detail) {
  events_.push_back({profile_.time, std::move(kind), std::move(detail)});
}

void FlowRun::assemble(std::span<const double> u, std::vector<double>& tau,
                       VariationalOperator::Jacobian& jac) const {
  if (options_.scheme == SpatialScheme::Variational) {
    variational_.tau_and_jacobian(u, tau, jac);
    return;
  }
  const RadialGrid& g = grid();
  const std::size_t N = g.resolution();
  const int k = spec_.k;
  tau.resize(N - 1);
  jac.sub.assign(N - 1, 0.0);
  jac.diag.assign(N - 1, 0.0);
  jac.sup.assign(N - 1, 0.0);
  for (std::size_t i = 1; i < N; ++i) {
    const double lo = stencil_.lower[i];
    const double up = stencil_.upper[i];
    tau[i - 1] = lo * (u[i - 1] - u[i]) + up * (u[i + 1] - u[i]) + nonlinear_term(u[i], g[i], k);
    jac.sub[i - 1] = i >= 2 ? lo : 0.0;
    jac.sup[i - 1] = up;
    jac.diag[i - 1] = -(lo + up) + nonlinear_derivative(u[i], g[i], k);
  }
}

bool FlowRun::attempt(double dt, std::vector<double>& u, int& iterations) const {
  const std::size_t N = grid().resolution();
  const auto& old = profile_.values;

  u = old;
  u.front() = origin_m_ * kPi;
  u.back() = evaluate_boundary(spec_, 1.0, profile_.time + dt);

  const std::size_t n = N - 1;
  std::vector<double> tau, rhs(n), sub(n), diag(n), sup(n);
  VariationalOperator::Jacobian jac;
  double last_update = std::numeric_limits<double>::infinity();
  const double update_tol = std::sqrt(options_.newton_tol);
  for (iterations = 0; iterations <= options_.max_newton_iterations; ++iterations) {
    assemble(u, tau, jac);
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double f = u[j + 1] - old[j + 1] - dt * tau[j];
      const double scale = 1.0 + dt * (std::abs(jac.sub[j]) + std::abs(jac.diag[j]) + std::abs(jac.sup[j]));
      residual = std::max(residual, std::abs(f) / scale);
      rhs[j] = f;
      sub[j] = -dt * jac.sub[j];
      diag[j] = 1.0 - dt * jac.diag[j];
      sup[j] = -dt * jac.sup[j];
    }
    if (!std::isfinite(residual)) return false;
    if (iterations > 0 && residual < options_.newton_tol && last_update < update_tol) break;
    if (iterations == options_.max_newton_iterations) return false;
    const auto delta = solve_tridiagonal(sub, diag, sup, rhs);
    last_update = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      u[j + 1] -= delta[j];
      last_update = std::max(last_update, std::abs(delta[j]));
    }
  }

  if (options_.max_change > 0.0) {
    for (std::size_t i = 1; i < N; ++i) {
      if (std::abs(u[i] - old[i]) > options_.max_change) return false;
    }
  }
  return true;
}

void FlowRun::check_gradient() {
  const double G = max_gradient();
  if (G > options_.gradient_limit) {
    status_ = RunStatus::BlowUpDetected;
    std::ostringstream os;
    os << "max|h_r|=" << G << " exceeds " << options_.gradient_limit;
    log("gradient-limit", os.str());
  }
}

RunStatus FlowRun::step() { return step_bounded(std::numeric_limits<double>::infinity()); }

RunStatus FlowRun::step_bounded(double t_limit) {
  if (status_ != RunStatus::Running) throw UsageError("step() on a run that is not Running");
  std::vector<double> next;
  while (true) {
    const double room = t_limit - profile_.time;
    const bool clipped = room < dt_;
    const double dt = clipped ? room : dt_;
    int iterations = 0;
    if (attempt(dt, next, iterations)) {
      profile_.values = std::move(next);
      profile_.time = clipped ? t_limit : profile_.time + dt;
      last_iterations_ = iterations;
      ++step_count_;
      if (!clipped) dt_ = std::min(dt_ * options_.growth, options_.dt_max);
      check_gradient();
      return status_;
    }
    ++rejected_;
    {
      std::ostringstream os;
      os << "dt=" << dt << " newton_iterations=" << iterations;
      log("step-rejected", os.str());
    }
    dt_ = (clipped ? dt : dt_) * 0.5;
    if (dt_ < options_.dt_min) {
      status_ = RunStatus::StepFailure;
      log("step-failure", "dt fell below dt_min");
      return status_;
    }
  }
}

RunStatus FlowRun::solve_until(double T, std::span<const Observer> observers) {
  if (status_ == RunStatus::CompletedT) status_ = RunStatus::Running;
  if (status_ != RunStatus::Running) return status_;
  while (profile_.time < T) {
    if (step_bounded(T) != RunStatus::Running) return status_;
    for (const auto& observer : observers) {
      if (observer(*this) == ObserverAction::Halt) {
        status_ = RunStatus::BlowUpDetected;
        log("observer-halt");
        return status_;
      }
    }
  }
  status_ = RunStatus::CompletedT;
  log("completed");
  return status_;
}

Observer recording_observer(SnapshotSeries& series) {
  return [&series](const FlowRun& run) {
    series.snapshots.push_back({run.time(), run.profile().values});
    return ObserverAction::Continue;
  };
}

SnapshotSeries solve_recorded(FlowRun& run, double T, std::span<const Observer> extra) {
  SnapshotSeries series;
  series.grid = run.profile().grid;
  series.k = run.profile().k;
  series.snapshots.push_back({run.time(), run.profile().values});
  std::vector<Observer> observers{recording_observer(series)};
  observers.insert(observers.end(), extra.begin(), extra.end());
  run.solve_until(T, observers);
  if (series.back().time != run.time()) series.snapshots.push_back({run.time(), run.profile().values});
  return series;
}

std::array<double, 3> ReconstructedMap::at(std::size_t i, double theta) const {
  const auto& v = vectors[i];
  return {std::cos(k * theta) * v[0], std::sin(k * theta) * v[0], v[2]};
}

ReconstructedMap reconstruct_map(const Profile& profile) {
  ReconstructedMap out;
  out.k = profile.k;
  const auto& g = *profile.grid;
  const auto hr = nodal_gradient(g, profile.values);
  const double k2 = static_cast<double>(profile.k * profile.k);
  out.vectors.reserve(profile.size());
  out.gradient_energy_density.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double h = profile.values[i];
    out.vectors.push_back({std::sin(h), 0.0, std::cos(h)});
    if (i == 0) {
      out.gradient_energy_density.push_back(profile.k == 1 ? 2.0 * hr[0] * hr[0] : 0.0);
      continue;
    }
    const double s = std::sin(h - std::round(h / kPi) * kPi);
    out.gradient_energy_density.push_back(hr[i] * hr[i] + k2 * s * s / (g[i] * g[i]));
  }
  return out;
}

std::vector<double> solve_tridiagonal(std::span<const double> a, std::span<const double> b,
                                      std::span<const double> c, std::span<const double> d) {
  const std::size_t n = b.size();
  std::vector<double> cp(n), x(n);
  double denom = b[0];
  cp[0] = n > 1 ? c[0] / denom : 0.0;
  x[0] = d[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = b[i] - a[i] * cp[i - 1];
    cp[i] = i + 1 < n ? c[i] / denom : 0.0;
    x[i] = (d[i] - a[i] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
  return x;
}

}  // namespace eqflow
