#include "eqflow/stationary.hpp"

#include <cmath>
#include <numbers>

namespace eqflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kLadderRungs = 31;
}

std::string to_string(StationaryFamily family) {
  switch (family) {
    case StationaryFamily::ThetaAlpha: return "ThetaAlpha";
    case StationaryFamily::ChiAlpha: return "ChiAlpha";
    case StationaryFamily::ConstantMPi: return "ConstantMPi";
    case StationaryFamily::FourArctan: return "FourArctan";
  }
  return "ThetaAlpha";
}

ValueAndSlope eval_stationary(const StationaryProfile& sp, double r) {
  const double offset = sp.m * kPi;
  if (sp.family == StationaryFamily::ConstantMPi) return {offset, 0.0};

  const double u = std::pow(sp.alpha * r, sp.k);
  // d/dr 2 atan(u) = 2 k alpha^k r^(k-1) / (1 + u^2)
  const double du = sp.k * std::pow(sp.alpha, sp.k) * std::pow(r, sp.k - 1);
  const double arc = 2.0 * std::atan(u);
  const double darc = 2.0 * du / (1.0 + u * u);

  switch (sp.family) {
    case StationaryFamily::ThetaAlpha: return {offset + arc, darc};
    case StationaryFamily::ChiAlpha: return {offset + kPi - arc, -darc};
    case StationaryFamily::FourArctan: return {offset + 2.0 * arc, 2.0 * darc};
    case StationaryFamily::ConstantMPi: break;
  }
  return {offset, 0.0};
}

std::vector<double> sample_stationary(const StationaryProfile& sp, const RadialGrid& grid) {
  std::vector<double> out;
  out.reserve(grid.node_count());
  for (double r : grid.nodes()) out.push_back(eval_stationary(sp, r).value);
  return out;
}

std::optional<Barrier> barrier_fit(const RadialGrid& grid, std::span<const double> values, int k) {
  if (values.size() != grid.node_count() || values.front() != 0.0) return std::nullopt;

  auto dominated_prefix = [&](double alpha) {
    const auto theta = StationaryProfile::theta(alpha, k);
    std::size_t p = 0;
    while (p < values.size() && eval_stationary(theta, grid[p]).value >= std::abs(values[p]) - 1e-12) ++p;
    return p;
  };

  const std::size_t best = dominated_prefix(std::ldexp(1.0, kLadderRungs - 1));
  if (best <= 1) return std::nullopt;
  for (int j = 0; j < kLadderRungs; ++j) {
    const double alpha = std::ldexp(1.0, j);
    const std::size_t p = dominated_prefix(alpha);
    if (p == best) return Barrier{alpha, grid[best - 1], best};
  }
  return std::nullopt;
}

}  // namespace eqflow
