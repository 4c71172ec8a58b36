#pragma once

#include <span>
#include <vector>

#include "eqflow/grid.hpp"

namespace eqflow {

/**
 * Energy-based spatial operator used by the time stepper.
 *
 * The discrete energy is a sum of cell terms written in Bogomolny form. On a
 * cell [r_j, r_{j+1}] with ds = log(r_{j+1}/r_j), e = k ds / 2 and end
 * values a, b:
 *
 *   E_j = pi * (4 B^2 / ds + 2k (cos a - cos b)),
 *   B   = cosh(e) sin((b - a)/2) - sinh(e) sin((a + b)/2),
 *
 * and the origin cell contributes 2 pi k (1 - cos(h_1 - h_0)). B vanishes
 * exactly when tan(b/2) = (r_{j+1}/r_j)^k tan(a/2), so every sampled
 * 2m*pi +- 2 atan((alpha r)^k) is an exact discrete equilibrium and the
 * critical boundary value of the discrete problem is exactly pi. The cell
 * energy is not invariant under h -> pi - h, so chi_alpha and odd offsets
 * are equilibria only up to the second-order truncation error.
 *
 * tau_i = -dE/dh_i / (2 pi w_i) with lumped weights w_i = r_i (r_{i+1} - r_{i-1}) / 2;
 * this approximates h_rr + h_r/r - k^2 sin(2h)/(2r^2) to second order.
 */
class VariationalOperator {
 public:
  /// origin_m is the pinned lattice index h(0)/pi; cells are evaluated on h - pi*(origin_m mod 2).
  VariationalOperator(const RadialGrid& grid, int k, int origin_m = 0);

  int k() const { return k_; }
  double weight(std::size_t i) const { return weights_[i]; }

  double energy(std::span<const double> values) const;

  /// dE/dh at every node (boundary entries included for completeness).
  std::vector<double> energy_gradient(std::span<const double> values) const;

  /// tau at interior nodes; entry j is node j+1.
  std::vector<double> tau(std::span<const double> values) const;

  /// Tridiagonal Jacobian of tau w.r.t. interior values; entry j is node j+1.
  /// sub[0] and sup[n-1] couple to the fixed boundary values.
  struct Jacobian {
    std::vector<double> sub, diag, sup;
  };
  void tau_and_jacobian(std::span<const double> values, std::vector<double>& tau, Jacobian& jac) const;

 private:
  struct CellTerms {
    double energy;
    double da, db;              // first derivatives
    double daa, dab, dbb;       // second derivatives
  };
  CellTerms cell(std::size_t j, double a, double b) const;

  const RadialGrid* grid_;
  double shift_ = 0.0;
  int k_;
  std::vector<double> log_spacing_;
  std::vector<double> cosh_;
  std::vector<double> sinh_;
  std::vector<double> weights_;
};

}  // namespace eqflow
