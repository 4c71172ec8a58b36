#include "eqflow/variational.hpp"

#include <cmath>
#include <numbers>

#include "eqflow/errors.hpp"

namespace eqflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

VariationalOperator::VariationalOperator(const RadialGrid& grid, int k, int origin_m)
    : grid_(&grid),
      shift_(origin_m % 2 != 0 ? kPi : 0.0),
      k_(k),
      log_spacing_(grid.node_count(), 0.0),
      cosh_(grid.node_count(), 1.0),
      sinh_(grid.node_count(), 0.0),
      weights_(grid.node_count(), 0.0) {
  if (k < 1) throw ConfigError("k must be >= 1");
  const std::size_t N = grid.resolution();
  for (std::size_t j = 1; j < N; ++j) {
    const double ds = std::log(grid[j + 1] / grid[j]);
    log_spacing_[j] = ds;
    cosh_[j] = std::cosh(0.5 * k * ds);
    sinh_[j] = std::sinh(0.5 * k * ds);
  }
  for (std::size_t i = 1; i < N; ++i) weights_[i] = grid[i] * 0.5 * (grid[i + 1] - grid[i - 1]);
}

VariationalOperator::CellTerms VariationalOperator::cell(std::size_t j, double a, double b) const {
  a -= shift_;
  b -= shift_;
  const double C = cosh_[j];
  const double S = sinh_[j];
  const double ds = log_spacing_[j];
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double sh = std::sin(half), ch = std::cos(half);
  const double sm = std::sin(mid), cm = std::cos(mid);

  const double B = C * sh - S * sm;
  const double Ba = -0.5 * (C * ch + S * cm);
  const double Bb = 0.5 * (C * ch - S * cm);
  const double Bab = 0.25 * (C * sh + S * sm);
  // B_aa = B_bb = -B / 4
  const double kk = static_cast<double>(k_);
  const double c8 = 8.0 * kPi / ds;

  CellTerms t;
  t.energy = kPi * (4.0 * B * B / ds + 2.0 * kk * (std::cos(a) - std::cos(b)));
  t.da = c8 * B * Ba - 2.0 * kPi * kk * std::sin(a);
  t.db = c8 * B * Bb + 2.0 * kPi * kk * std::sin(b);
  t.daa = c8 * (Ba * Ba - 0.25 * B * B) - 2.0 * kPi * kk * std::cos(a);
  t.dbb = c8 * (Bb * Bb - 0.25 * B * B) + 2.0 * kPi * kk * std::cos(b);
  t.dab = c8 * (Ba * Bb + B * Bab);
  return t;
}

double VariationalOperator::energy(std::span<const double> h) const {
  if (h.size() != grid_->node_count()) throw UsageError("variational energy: size mismatch");
  double E = 2.0 * kPi * k_ * (1.0 - std::cos(h[1] - h[0]));
  for (std::size_t j = 1; j < grid_->resolution(); ++j) E += cell(j, h[j], h[j + 1]).energy;
  return E;
}

std::vector<double> VariationalOperator::energy_gradient(std::span<const double> h) const {
  if (h.size() != grid_->node_count()) throw UsageError("variational gradient: size mismatch");
  std::vector<double> g(h.size(), 0.0);
  const double origin = 2.0 * kPi * k_ * std::sin(h[1] - h[0]);
  g[0] -= origin;
  g[1] += origin;
  for (std::size_t j = 1; j < grid_->resolution(); ++j) {
    const auto t = cell(j, h[j], h[j + 1]);
    g[j] += t.da;
    g[j + 1] += t.db;
  }
  return g;
}

std::vector<double> VariationalOperator::tau(std::span<const double> h) const {
  const auto g = energy_gradient(h);
  const std::size_t N = grid_->resolution();
  std::vector<double> out(N - 1);
  for (std::size_t i = 1; i < N; ++i) out[i - 1] = -g[i] / (2.0 * kPi * weights_[i]);
  return out;
}

void VariationalOperator::tau_and_jacobian(std::span<const double> h, std::vector<double>& tau,
                                           Jacobian& jac) const {
  if (h.size() != grid_->node_count()) throw UsageError("variational jacobian: size mismatch");
  const std::size_t N = grid_->resolution();
  const std::size_t n = N - 1;
  std::vector<double> g(N + 1, 0.0), hd(N + 1, 0.0), off(N + 1, 0.0);  // off[j] couples j, j+1
  const double d = h[1] - h[0];
  g[1] = 2.0 * kPi * k_ * std::sin(d);
  hd[1] = 2.0 * kPi * k_ * std::cos(d);
  for (std::size_t j = 1; j < N; ++j) {
    const auto t = cell(j, h[j], h[j + 1]);
    g[j] += t.da;
    g[j + 1] += t.db;
    hd[j] += t.daa;
    hd[j + 1] += t.dbb;
    off[j] = t.dab;
  }
  tau.resize(n);
  jac.sub.assign(n, 0.0);
  jac.diag.assign(n, 0.0);
  jac.sup.assign(n, 0.0);
  for (std::size_t i = 1; i < N; ++i) {
    const double s = -1.0 / (2.0 * kPi * weights_[i]);
    tau[i - 1] = s * g[i];
    jac.diag[i - 1] = s * hd[i];
    jac.sub[i - 1] = s * (i >= 2 ? off[i - 1] : 0.0);
    jac.sup[i - 1] = s * off[i];
  }
}

}  // namespace eqflow
