#include "eqflow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "eqflow/errors.hpp"
#include "eqflow/spatial.hpp"
#include "eqflow/variational.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

double sin_lattice(double h) { return std::sin(h - std::round(h / kPi) * kPi); }

// (h_r^2 + k^2 sin^2 h / r^2) r at every node; the origin contributes 0.
std::vector<double> energy_integrand(const RadialGrid& grid, std::span<const double> values, int k) {
  const auto hr = nodal_gradient(grid, values);
  std::vector<double> f(values.size(), 0.0);
  const double k2 = static_cast<double>(k * k);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double r = grid[i];
    const double s = sin_lattice(values[i]);
    f[i] = (hr[i] * hr[i] + k2 * s * s / (r * r)) * r;
  }
  return f;
}

double trapezoid(const RadialGrid& grid, std::span<const double> f) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) sum += 0.5 * (f[i] + f[i + 1]) * grid.spacing(i);
  return sum;
}

}  // namespace

double energy(const RadialGrid& grid, std::span<const double> values, int k) {
  if (values.size() != grid.node_count()) throw UsageError("energy: profile size does not match grid");
  return kPi * trapezoid(grid, energy_integrand(grid, values, k));
}

double energy(const Profile& profile) { return energy(*profile.grid, profile.values, profile.k); }

double discrete_energy(const RadialGrid& grid, std::span<const double> values, int k) {
  if (values.size() != grid.node_count()) throw UsageError("discrete_energy: profile size does not match grid");
  const int m = static_cast<int>(std::lround(values[0] / kPi));
  return VariationalOperator(grid, k, m).energy(values);
}

double discrete_energy(const Profile& profile) { return discrete_energy(*profile.grid, profile.values, profile.k); }

std::vector<double> cumulative_energy(const RadialGrid& grid, std::span<const double> values, int k) {
  const auto f = energy_integrand(grid, values, k);
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + kPi * 0.5 * (f[i - 1] + f[i]) * grid.spacing(i - 1);
  return out;
}

EnergyRateCheck energy_rate_check(const RadialGrid& grid, const BoundaryDataSpec& spec, const Snapshot& s1,
                                  const Snapshot& s2) {
  const double dt = s2.time - s1.time;
  if (!(dt > 0.0)) throw UsageError("energy_rate_check needs t2 > t1");
  const int k = spec.k;
  EnergyRateCheck c;
  c.t_mid = 0.5 * (s1.time + s2.time);
  c.measured_rate = (energy(grid, s2.values, k) - energy(grid, s1.values, k)) / dt;

  std::vector<double> mid(s1.values.size()), ht(s1.values.size()), ht2r(s1.values.size());
  for (std::size_t i = 0; i < mid.size(); ++i) {
    mid[i] = 0.5 * (s1.values[i] + s2.values[i]);
    ht[i] = (s2.values[i] - s1.values[i]) / dt;
    ht2r[i] = ht[i] * ht[i] * grid[i];
  }
  const double hr1 = nodal_gradient(grid, mid).back();
  const double dh0 = (evaluate_boundary(spec, 1.0, s2.time) - evaluate_boundary(spec, 1.0, s1.time)) / dt;
  c.boundary_flux = 2.0 * kPi * hr1 * dh0;
  c.dissipation = 2.0 * kPi * trapezoid(grid, ht2r);
  c.residual = std::abs(c.measured_rate - (c.boundary_flux - c.dissipation));
  return c;
}

double EnergyLedger::max_energy() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.energy);
  return m;
}

double EnergyLedger::max_residual() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.residual);
  return m;
}

double EnergyLedger::max_increase() const {
  double worst = 0.0;
  double running_min = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    worst = std::max(worst, s.energy - running_min);
    running_min = std::min(running_min, s.energy);
  }
  return worst;
}

EnergyLedger build_energy_ledger(const SnapshotSeries& series, const BoundaryDataSpec& spec) {
  EnergyLedger ledger;
  const auto& g = *series.grid;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series.snapshots[i];
    EnergySample sample{s.time, energy(g, s.values, series.k), 0.0, 0.0, 0.0};
    if (i > 0 && s.time > series.snapshots[i - 1].time) {
      const auto c = energy_rate_check(g, spec, series.snapshots[i - 1], s);
      sample.flux = c.boundary_flux;
      sample.dissipation = c.dissipation;
      sample.residual = c.residual;
    }
    ledger.samples.push_back(sample);
  }
  return ledger;
}

std::string energy_ledger_csv(const EnergyLedger& ledger) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "time,energy,flux,dissipation,residual\n";
  for (const auto& s : ledger.samples) {
    os << s.time << ',' << s.energy << ',' << s.flux << ',' << s.dissipation << ',' << s.residual << '\n';
  }
  return os.str();
}

std::vector<double> sacks_uhlenbeck_residual(const Profile& profile, std::span<const double> h_t) {
  const auto& g = *profile.grid;
  if (h_t.size() != profile.size()) throw UsageError("sacks_uhlenbeck_residual: h_t size mismatch");
  const auto hr = nodal_gradient(g, profile.values);
  const double k2 = static_cast<double>(profile.k * profile.k);
  std::vector<double> integrand(profile.size()), out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) integrand[i] = g[i] * g[i] * hr[i] * h_t[i];
  double lhs = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0) lhs += (integrand[i - 1] + integrand[i]) * g.spacing(i - 1);  // 2 * trapezoid
    const double r = g[i];
    const double s = sin_lattice(profile.values[i]);
    out[i] = lhs - (r * r * hr[i] * hr[i] - k2 * s * s);
  }
  return out;
}

double sacks_uhlenbeck_analytic(const StationaryProfile& sp, double r) {
  const auto [h, hr] = eval_stationary(sp, r);
  const double s = std::sin(h);
  return r * r * hr * hr - sp.k * sp.k * s * s;
}

double first_order_identity_residual(const StationaryProfile& sp, double r) {
  const auto [h, hr] = eval_stationary(sp, r);
  return std::abs(std::abs(r * hr) - sp.k * std::abs(std::sin(h)));
}

}  // namespace eqflow
