#pragma once

#include <span>
#include <vector>

#include "eqflow/grid.hpp"

namespace eqflow {

/**
 * Three-point non-uniform central discretisation of h_rr + h_r / r at the
 * interior nodes 1..N-1, written in difference form
 *
 *   (L h)_i = lower[i] (h_{i-1} - h_i) + upper[i] (h_{i+1} - h_i)
 *
 * so that constants are annihilated exactly. Index 0 and N are unused.
 */
struct RadialStencil {
  std::vector<double> lower;
  std::vector<double> upper;

  explicit RadialStencil(const RadialGrid& grid);
};

/// -k^2 sin(2h) / (2 r^2), evaluated on the offset from the nearest multiple of pi.
double nonlinear_term(double h, double r, int k);

/// d/dh of nonlinear_term: -k^2 cos(2h) / r^2.
double nonlinear_derivative(double h, double r, int k);

/// Discrete tau(h) = h_rr + h_r/r - k^2 sin(2h)/(2r^2) at interior nodes; entry j is node j+1.
std::vector<double> evaluate_tau(const RadialGrid& grid, std::span<const double> values, int k);
std::vector<double> evaluate_tau(const RadialGrid& grid, const RadialStencil& stencil,
                                 std::span<const double> values, int k);

/// h_r at every node: central three-point inside, one-sided second order at both ends.
std::vector<double> nodal_gradient(const RadialGrid& grid, std::span<const double> values);

/// Index of max |h_r| over the nodes.
std::size_t argmax_abs(std::span<const double> values);

double sup_norm(std::span<const double> values);

}  // namespace eqflow
