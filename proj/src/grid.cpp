#include "eqflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqflow/errors.hpp"

namespace eqflow {

RadialGrid::RadialGrid(std::size_t N, double gamma) : N_(N), gamma_(gamma) {
  if (N < kMinResolution) {
    throw ConfigError("radial grid needs N >= 16, got " + std::to_string(N));
  }
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("radial grid needs gamma >= 1, got " + std::to_string(gamma));
  }
  nodes_ = graded_nodes(N, gamma);
}

double RadialGrid::min_spacing() const {
  double m = spacing(0);
  for (std::size_t i = 1; i < N_; ++i) m = std::min(m, spacing(i));
  return m;
}

double RadialGrid::max_spacing() const {
  double m = spacing(0);
  for (std::size_t i = 1; i < N_; ++i) m = std::max(m, spacing(i));
  return m;
}

std::vector<double> graded_nodes(std::size_t N, double gamma) {
  if (N == 0) throw ConfigError("graded_nodes needs N >= 1");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("graded_nodes needs gamma >= 1, got " + std::to_string(gamma));
  }
  std::vector<double> nodes(N + 1);
  const double n = static_cast<double>(N);
  for (std::size_t i = 0; i <= N; ++i) {
    const double s = static_cast<double>(i) / n;
    nodes[i] = gamma == 1.0 ? s : std::pow(s, gamma);
  }
  nodes.front() = 0.0;
  nodes.back() = 1.0;
  return nodes;
}

RadialGrid build_graded_grid(std::size_t N, double gamma) { return RadialGrid(N, gamma); }

RadialGrid refine(const RadialGrid& grid) {
  return RadialGrid(2 * grid.resolution(), grid.grading_exponent());
}

double default_grading(int k) { return std::max(2.0, static_cast<double>(k)); }

}  // namespace eqflow
