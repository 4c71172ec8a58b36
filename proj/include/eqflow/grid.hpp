#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eqflow {

/**
 * Power-law graded mesh on [0, 1]: r_i = (i/N)^gamma, i = 0..N.
 *
 * The origin carries a Dirichlet value and is never an unknown; grading with
 * gamma > 1 clusters nodes there, where h ~ r^k and gradients concentrate.
 * Immutable after construction.
 */
class RadialGrid {
 public:
  static constexpr std::size_t kMinResolution = 16;

  /// Throws ConfigError for N < 16 or gamma < 1.
  RadialGrid(std::size_t N, double gamma);


  std::size_t resolution() const { return N_; }
  std::size_t node_count() const { return N_ + 1; }
  double grading_exponent() const { return gamma_; }

  std::span<const double> nodes() const { return nodes_; }
  double operator[](std::size_t i) const { return nodes_[i]; }

  /// r_{i+1} - r_i for i in [0, N).
  double spacing(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }
  double min_spacing() const;
  double max_spacing() const;

  bool operator==(const RadialGrid& other) const {
    return N_ == other.N_ && gamma_ == other.gamma_;
  }

 private:
  std::size_t N_ = 0;
  double gamma_ = 1.0;
  std::vector<double> nodes_;
};

/// Raw node law (i/N)^gamma with exact endpoints; no minimum-resolution check.
/// Throws ConfigError for N == 0 or gamma < 1.
std::vector<double> graded_nodes(std::size_t N, double gamma);

RadialGrid build_graded_grid(std::size_t N, double gamma);

/// Same grading exponent, doubled resolution.
RadialGrid refine(const RadialGrid& grid);

/// gamma = 2 for k = 1 and max(2, k) otherwise.
double default_grading(int k);

}  // namespace eqflow
