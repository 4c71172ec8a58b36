#include "eqflow/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqflow/errors.hpp"
#include "eqflow/profile.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Offset of h from the nearest multiple of pi; sin(2h) and cos(2h) only see this.
double lattice_offset(double h) { return h - std::round(h / kPi) * kPi; }

}  // namespace

RadialStencil::RadialStencil(const RadialGrid& grid)
    : lower(grid.node_count(), 0.0), upper(grid.node_count(), 0.0) {
  const std::size_t N = grid.resolution();
  for (std::size_t i = 1; i < N; ++i) {
    const double r = grid[i];
    const double dm = grid[i] - grid[i - 1];
    const double dp = grid[i + 1] - grid[i];
    const double s = dm + dp;
    lower[i] = 2.0 / (dm * s) - dp / (dm * s * r);
    upper[i] = 2.0 / (dp * s) + dm / (dp * s * r);
  }
}

double nonlinear_term(double h, double r, int k) {
  const double d = lattice_offset(h);
  // sin(2d)/2 = d * (sin(2d)/(2d)); the ratio is 1 to double precision here.
  const double half_sin = std::abs(d) < 1e-8 ? d : 0.5 * std::sin(2.0 * d);
  return -static_cast<double>(k * k) * half_sin / (r * r);
}

double nonlinear_derivative(double h, double r, int k) {
  return -static_cast<double>(k * k) * std::cos(2.0 * lattice_offset(h)) / (r * r);
}

std::vector<double> evaluate_tau(const RadialGrid& grid, std::span<const double> values, int k) {
  return evaluate_tau(grid, RadialStencil(grid), values, k);
}

std::vector<double> evaluate_tau(const RadialGrid& grid, const RadialStencil& stencil,
                                 std::span<const double> values, int k) {
  if (values.size() != grid.node_count()) throw UsageError("evaluate_tau: profile size does not match grid");
  const std::size_t N = grid.resolution();
  std::vector<double> tau(N - 1);
  for (std::size_t i = 1; i < N; ++i) {
    const double h = values[i];
    tau[i - 1] = stencil.lower[i] * (values[i - 1] - h) + stencil.upper[i] * (values[i + 1] - h) +
                 nonlinear_term(h, grid[i], k);
  }
  return tau;
}

std::vector<double> nodal_gradient(const RadialGrid& grid, std::span<const double> values) {
  if (values.size() != grid.node_count()) throw UsageError("nodal_gradient: profile size does not match grid");
  const std::size_t N = grid.resolution();
  std::vector<double> g(N + 1);
  for (std::size_t i = 1; i < N; ++i) {
    const double dm = grid[i] - grid[i - 1];
    const double dp = grid[i + 1] - grid[i];
    const double s = dm + dp;
    g[i] = -dp / (dm * s) * (values[i - 1] - values[i]) + dm / (dp * s) * (values[i + 1] - values[i]);
  }
  {
    const double d1 = grid[1] - grid[0];
    const double d2 = grid[2] - grid[1];
    g[0] = (d1 + d2) / (d1 * d2) * (values[1] - values[0]) - d1 / (d2 * (d1 + d2)) * (values[2] - values[0]);
  }
  {
    const double d1 = grid[N] - grid[N - 1];
    const double d2 = grid[N - 1] - grid[N - 2];
    g[N] = (d1 + d2) / (d1 * d2) * (values[N] - values[N - 1]) - d1 / (d2 * (d1 + d2)) * (values[N] - values[N - 2]);
  }
  return g;
}

std::size_t argmax_abs(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  }
  return best;
}

double sup_norm(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> SnapshotSeries::values_at(double t) const {
  if (snapshots.empty()) throw UsageError("values_at on an empty series");
  if (t <= snapshots.front().time) return snapshots.front().values;
  if (t >= snapshots.back().time) return snapshots.back().values;
  const auto it = std::upper_bound(snapshots.begin(), snapshots.end(), t,
                                   [](double x, const Snapshot& s) { return x < s.time; });
  const Snapshot& b = *it;
  const Snapshot& a = *(it - 1);
  const double w = (t - a.time) / (b.time - a.time);
  std::vector<double> out(a.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - w) * a.values[i] + w * b.values[i];
  return out;
}

SnapshotSeries frozen_series(GridPtr grid, int k, std::vector<double> values, std::span<const double> times) {
  SnapshotSeries s{std::move(grid), k, {}};
  for (double t : times) s.snapshots.push_back({t, values});
  return s;
}

}  // namespace eqflow
