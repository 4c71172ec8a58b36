#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqflow/grid.hpp"

namespace eqflow {

/// Smooth multiplicative factor applied to the r^k-scaled part of the data.
struct TimeModulation {
  enum class Kind { Constant, Linear, Sinusoid, Relaxation };

  Kind kind = Kind::Constant;
  double rate = 0.0;       ///< Linear: 1 + rate*t
  double amplitude = 0.0;  ///< Sinusoid: 1 + amplitude*sin(omega*t)
  double omega = 0.0;
  double target = 1.0;     ///< Relaxation: 1 + (target-1)*(1 - exp(-t/timescale))
  double timescale = 1.0;

  double value(double t) const;
  double derivative(double t) const;
};

enum class BoundaryKind { StationaryArctan, FourArctan, LinearRamp, ScaledProfile, Constant };

std::string to_string(BoundaryKind kind);
BoundaryKind boundary_kind_from_string(const std::string& name);

/**
 * Declarative boundary/initial data h0(r,t) on the parabolic boundary.
 *
 * Every family has the form h0 = m*pi + r^k * g(r) * modulation(t), so the
 * origin value is a multiple of pi and h0 * r^-k stays bounded near 0.
 * Constant data ignores the modulation.
 */
struct BoundaryDataSpec {
  BoundaryKind kind = BoundaryKind::Constant;
  int k = 1;
  double alpha = 1.0;   // StationaryArctan, FourArctan
  int sign = 1;         // StationaryArctan
  int offset_m = 0;     // StationaryArctan
  double slope = 0.0;   // LinearRamp
  double constant = 0.0;
  std::vector<double> sample_radii;   // ScaledProfile: knots of the r^-k scaled profile
  std::vector<double> sample_values;
  TimeModulation modulation;

  static BoundaryDataSpec stationary_arctan(int k, double alpha, int sign = 1, int offset_m = 0);
  static BoundaryDataSpec four_arctan(int k, double alpha = 1.0);
  static BoundaryDataSpec linear_ramp(int k, double slope);
  static BoundaryDataSpec scaled_profile(int k, std::vector<double> radii, std::vector<double> values);
  static BoundaryDataSpec constant_value(int k, double c);

  BoundaryDataSpec with_modulation(TimeModulation m) const {
    BoundaryDataSpec copy = *this;
    copy.modulation = m;
    return copy;
  }

  /// Throws ConfigError on malformed parameters (k < 1, alpha <= 0, bad samples).
  void check() const;
};

/// h0(r,t). Throws UsageError for r outside [0,1] or t < 0.
double evaluate_boundary(const BoundaryDataSpec& spec, double r, double t);

/// d/dt h0(r,t), analytic.
double boundary_time_derivative(const BoundaryDataSpec& spec, double r, double t);

/// Integer m with h0(0,t) == m*pi, or nullopt if the origin value is off the lattice.
std::optional<int> origin_multiple(const BoundaryDataSpec& spec, double t = 0.0);

struct ValidationReport {
  bool origin_on_pi_lattice = false;
  int origin_m = 0;
  double origin_deviation = 0.0;
  bool scaled_bounded = false;       ///< |h0 - m*pi| r^-k bounded on the three smallest nodes
  std::vector<double> scaled_samples;
  double sup_abs = 0.0;              ///< sup |h0| over the sampled parabolic boundary
  bool bounded_by_pi = false;        ///< sup |h0| <= pi: global existence criterion
  bool ok() const { return origin_on_pi_lattice && scaled_bounded; }
};

/// Report-only structural check of the data over [0,1] x [0,T].
ValidationReport validate_spec(const BoundaryDataSpec& spec, const RadialGrid& grid, double T = 1.0);

/// Data sampled on the parabolic boundary {t = 0} u {r = 0} u {r = 1}.
struct ParabolicBoundary {
  double T = 0.0;
  std::vector<double> times;
  std::vector<double> left_values;
  std::vector<double> right_values;
  std::vector<double> initial_values;

  bool corners_consistent(double tol = 1e-12) const;
};

ParabolicBoundary sample_parabolic_boundary(const BoundaryDataSpec& spec, const RadialGrid& grid,
                                            double T, std::size_t time_samples = 65);

}  // namespace eqflow
