#pragma once

#include <span>
#include <string>
#include <vector>

#include "eqflow/boundary.hpp"
#include "eqflow/profile.hpp"
#include "eqflow/stationary.hpp"

namespace eqflow {

/// E(h) = pi * int_0^1 (h_r^2 + k^2 sin^2(h)/r^2) r dr, trapezoidal on the grid.
double energy(const Profile& profile);
double energy(const RadialGrid& grid, std::span<const double> values, int k);

/// Energy of the implicit scheme's spatial operator (cellwise Bogomolny form);
/// the flow decreases it at every accepted step when the boundary is frozen.
double discrete_energy(const Profile& profile);
double discrete_energy(const RadialGrid& grid, std::span<const double> values, int k);

/// pi * int_0^{r_j} (...) r dr for every node j (cumulative trapezoid).
std::vector<double> cumulative_energy(const RadialGrid& grid, std::span<const double> values, int k);

/// Terms of dE/dt = 2 pi h_r(1) d_t h0(1) - 2 pi int h_t^2 r dr between two snapshots.
struct EnergyRateCheck {
  double t_mid = 0.0;
  double measured_rate = 0.0;    ///< (E2 - E1) / (t2 - t1)
  double boundary_flux = 0.0;    ///< 2 pi h_r(1) d_t h0(1) at the midpoint
  double dissipation = 0.0;      ///< 2 pi int h_t^2 r dr with h_t differenced from the snapshots
  double residual = 0.0;         ///< |measured - (flux - dissipation)|
};

/// Throws UsageError when t2 <= t1.
EnergyRateCheck energy_rate_check(const RadialGrid& grid, const BoundaryDataSpec& spec, const Snapshot& s1,
                                  const Snapshot& s2);

struct EnergySample {
  double time;
  double energy;
  double flux;          ///< flux term of the interval ending at this sample (0 for the first)
  double dissipation;
  double residual;
};

struct EnergyLedger {
  std::vector<EnergySample> samples;

  double max_energy() const;
  double max_residual() const;
  /// Largest E(t2) - E(t1) over t2 > t1 (0 if non-increasing).
  double max_increase() const;
};

EnergyLedger build_energy_ledger(const SnapshotSeries& series, const BoundaryDataSpec& spec);

std::string energy_ledger_csv(const EnergyLedger& ledger);

/**
 * Per-node LHS - RHS of 2 int_0^r s^2 h_r h_t ds = r^2 h_r^2 - k^2 sin^2 h, with
 * the integral by cumulative trapezoid and h_r from nodal_gradient.
 */
std::vector<double> sacks_uhlenbeck_residual(const Profile& profile, std::span<const double> h_t);

/// r^2 h_r^2 - k^2 sin^2 h from the closed form (0 for the arctan families).
double sacks_uhlenbeck_analytic(const StationaryProfile& sp, double r);

/// |r h' - k sin h| for the closed form; vanishes identically for ThetaAlpha.
double first_order_identity_residual(const StationaryProfile& sp, double r);

}  // namespace eqflow
