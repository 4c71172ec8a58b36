#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqflow/grid.hpp"

namespace eqflow {

enum class StationaryFamily { ThetaAlpha, ChiAlpha, ConstantMPi, FourArctan };

std::string to_string(StationaryFamily family);

/**
 * Closed-form profiles used as stationary solutions, barriers and seeds:
 *
 *   ThetaAlpha   m*pi + 2 atan((alpha r)^k)
 *   ChiAlpha     m*pi + pi - 2 atan((alpha r)^k)
 *   ConstantMPi  m*pi
 *   FourArctan   m*pi + 4 atan((alpha r)^k)   (not stationary; tau >= 0)
 *
 * ThetaAlpha and ChiAlpha satisfy r h' = +-k sin h exactly.
 */
struct StationaryProfile {
  StationaryFamily family = StationaryFamily::ThetaAlpha;
  double alpha = 1.0;
  int m = 0;
  int k = 1;

  static StationaryProfile theta(double alpha, int k, int m = 0) { return {StationaryFamily::ThetaAlpha, alpha, m, k}; }
  static StationaryProfile chi(double alpha, int k, int m = 0) { return {StationaryFamily::ChiAlpha, alpha, m, k}; }
  static StationaryProfile constant(int m, int k) { return {StationaryFamily::ConstantMPi, 1.0, m, k}; }
  static StationaryProfile four_arctan(double alpha, int k) { return {StationaryFamily::FourArctan, alpha, 0, k}; }
};

struct ValueAndSlope {
  double value;
  double slope;
};

ValueAndSlope eval_stationary(const StationaryProfile& sp, double r);

std::vector<double> sample_stationary(const StationaryProfile& sp, const RadialGrid& grid);

struct Barrier {
  double alpha0;
  double r0;
  std::size_t prefix_nodes;  ///< nodes [0, prefix_nodes) are dominated
};

/**
 * Smallest ladder value alpha in {2^0, ..., 2^30} whose theta_alpha dominates
 * |h| on the longest achievable node prefix [0, r0]. Returns nullopt when the
 * profile is not pinned to 0 at the origin or the first interior node
 * already escapes every rung.
 */
std::optional<Barrier> barrier_fit(const RadialGrid& grid, std::span<const double> values, int k);

}  // namespace eqflow
