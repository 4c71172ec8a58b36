#include "eqflow/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqflow/errors.hpp"

namespace eqflow {

namespace {

constexpr double kPi = std::numbers::pi;

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return (1.0 - w) * ys[j - 1] + w * ys[j];
}

// Offset m*pi and the r^k-scaled, unmodulated remainder.
struct Split {
  double offset;
  double shape;
};

Split split(const BoundaryDataSpec& spec, double r) {
  const double rk = std::pow(r, spec.k);
  switch (spec.kind) {
    case BoundaryKind::StationaryArctan:
      return {spec.offset_m * kPi, spec.sign * 2.0 * std::atan(std::pow(spec.alpha * r, spec.k))};
    case BoundaryKind::FourArctan:
      return {0.0, 4.0 * std::atan(std::pow(spec.alpha * r, spec.k))};
    case BoundaryKind::LinearRamp:
      return {0.0, spec.slope * rk};
    case BoundaryKind::ScaledProfile:
      return {0.0, rk * interpolate(spec.sample_radii, spec.sample_values, r)};
    case BoundaryKind::Constant:
      return {spec.constant, 0.0};
  }
  return {0.0, 0.0};
}

void check_domain(double r, double t) {
  if (!(r >= 0.0 && r <= 1.0)) throw UsageError("boundary data evaluated at r outside [0,1]");
  if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("boundary data evaluated at t < 0");
}

}  // namespace

double TimeModulation::value(double t) const {
  switch (kind) {
    case Kind::Constant: return 1.0;
    case Kind::Linear: return 1.0 + rate * t;
    case Kind::Sinusoid: return 1.0 + amplitude * std::sin(omega * t);
    case Kind::Relaxation: return 1.0 + (target - 1.0) * (1.0 - std::exp(-t / timescale));
  }
  return 1.0;
}

double TimeModulation::derivative(double t) const {
  switch (kind) {
    case Kind::Constant: return 0.0;
    case Kind::Linear: return rate;
    case Kind::Sinusoid: return amplitude * omega * std::cos(omega * t);
    case Kind::Relaxation: return (target - 1.0) * std::exp(-t / timescale) / timescale;
  }
  return 0.0;
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::StationaryArctan: return "StationaryArctan";
    case BoundaryKind::FourArctan: return "FourArctan";
    case BoundaryKind::LinearRamp: return "LinearRamp";
    case BoundaryKind::ScaledProfile: return "ScaledProfile";
    case BoundaryKind::Constant: return "Constant";
  }
  return "Constant";
}

BoundaryKind boundary_kind_from_string(const std::string& name) {
  for (auto kind : {BoundaryKind::StationaryArctan, BoundaryKind::FourArctan, BoundaryKind::LinearRamp,
                    BoundaryKind::ScaledProfile, BoundaryKind::Constant}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown boundary data kind '" + name + "'");
}

BoundaryDataSpec BoundaryDataSpec::stationary_arctan(int k, double alpha, int sign, int offset_m) {
  BoundaryDataSpec s;
  s.kind = BoundaryKind::StationaryArctan;
  s.k = k;
  s.alpha = alpha;
  s.sign = sign;
  s.offset_m = offset_m;
  s.check();
  return s;
}

BoundaryDataSpec BoundaryDataSpec::four_arctan(int k, double alpha) {
  BoundaryDataSpec s;
  s.kind = BoundaryKind::FourArctan;
  s.k = k;
  s.alpha = alpha;
  s.check();
  return s;
}

BoundaryDataSpec BoundaryDataSpec::linear_ramp(int k, double slope) {
  BoundaryDataSpec s;
  s.kind = BoundaryKind::LinearRamp;
  s.k = k;
  s.slope = slope;
  s.check();
  return s;
}

BoundaryDataSpec BoundaryDataSpec::scaled_profile(int k, std::vector<double> radii, std::vector<double> values) {
  BoundaryDataSpec s;
  s.kind = BoundaryKind::ScaledProfile;
  s.k = k;
  s.sample_radii = std::move(radii);
  s.sample_values = std::move(values);
  s.check();
  return s;
}

BoundaryDataSpec BoundaryDataSpec::constant_value(int k, double c) {
  BoundaryDataSpec s;
  s.kind = BoundaryKind::Constant;
  s.k = k;
  s.constant = c;
  s.check();
  return s;
}

void BoundaryDataSpec::check() const {
  if (k < 1) throw ConfigError("equivariance index k must be >= 1");
  if ((kind == BoundaryKind::StationaryArctan || kind == BoundaryKind::FourArctan) &&
      !(alpha > 0.0 && std::isfinite(alpha))) {
    throw ConfigError("arctan data needs alpha > 0");
  }
  if (kind == BoundaryKind::StationaryArctan && sign != 1 && sign != -1) {
    throw ConfigError("StationaryArctan sign must be +1 or -1");
  }
  if (!std::isfinite(slope) || !std::isfinite(constant)) throw ConfigError("non-finite data parameter");
  if (kind == BoundaryKind::ScaledProfile) {
    if (sample_radii.size() < 2 || sample_radii.size() != sample_values.size()) {
      throw ConfigError("ScaledProfile needs >= 2 matching (radius, value) samples");
    }
    if (sample_radii.front() != 0.0 || sample_radii.back() != 1.0) {
      throw ConfigError("ScaledProfile sample radii must span [0,1]");
    }
    if (!std::is_sorted(sample_radii.begin(), sample_radii.end()) ||
        std::adjacent_find(sample_radii.begin(), sample_radii.end()) != sample_radii.end()) {
      throw ConfigError("ScaledProfile sample radii must be strictly increasing");
    }
  }
  if (modulation.kind == TimeModulation::Kind::Relaxation && !(modulation.timescale > 0.0)) {
    throw ConfigError("relaxation modulation needs timescale > 0");
  }
}

double evaluate_boundary(const BoundaryDataSpec& spec, double r, double t) {
  check_domain(r, t);
  const Split s = split(spec, r);
  if (spec.kind == BoundaryKind::Constant) return s.offset;
  return s.offset + spec.modulation.value(t) * s.shape;
}

double boundary_time_derivative(const BoundaryDataSpec& spec, double r, double t) {
  check_domain(r, t);
  if (spec.kind == BoundaryKind::Constant) return 0.0;
  return spec.modulation.derivative(t) * split(spec, r).shape;
}

std::optional<int> origin_multiple(const BoundaryDataSpec& spec, double t) {
  const double h = evaluate_boundary(spec, 0.0, t);
  const double m = std::round(h / kPi);
  if (std::abs(h - m * kPi) > 1e-12) return std::nullopt;
  return static_cast<int>(m);
}

ValidationReport validate_spec(const BoundaryDataSpec& spec, const RadialGrid& grid, double T) {
  ValidationReport report;
  constexpr std::size_t kTimes = 65;

  const double h00 = evaluate_boundary(spec, 0.0, 0.0);
  const double m = std::round(h00 / kPi);
  report.origin_m = static_cast<int>(m);
  report.origin_on_pi_lattice = true;
  for (std::size_t j = 0; j < kTimes; ++j) {
    const double t = T * static_cast<double>(j) / static_cast<double>(kTimes - 1);
    const double dev = std::abs(evaluate_boundary(spec, 0.0, t) - m * kPi);
    report.origin_deviation = std::max(report.origin_deviation, dev);
  }
  report.origin_on_pi_lattice = report.origin_deviation <= 1e-12;

  // Growth of the r^-k scaled data across the three smallest positive nodes.
  for (std::size_t i = 1; i <= 3 && i < grid.node_count(); ++i) {
    const double r = grid[i];
    report.scaled_samples.push_back(std::abs(evaluate_boundary(spec, r, 0.0) - m * kPi) / std::pow(r, spec.k));
  }
  const auto& q = report.scaled_samples;
  report.scaled_bounded = std::all_of(q.begin(), q.end(), [](double x) { return std::isfinite(x); }) &&
                          q.front() <= std::max(2.0 * q.back(), 1e-12);

  double sup = 0.0;
  for (double r : grid.nodes()) sup = std::max(sup, std::abs(evaluate_boundary(spec, r, 0.0)));
  for (std::size_t j = 0; j < kTimes; ++j) {
    const double t = T * static_cast<double>(j) / static_cast<double>(kTimes - 1);
    sup = std::max({sup, std::abs(evaluate_boundary(spec, 0.0, t)), std::abs(evaluate_boundary(spec, 1.0, t))});
  }
  report.sup_abs = sup;
  report.bounded_by_pi = sup <= kPi + 1e-12;
  return report;
}

bool ParabolicBoundary::corners_consistent(double tol) const {
  if (left_values.empty() || right_values.empty() || initial_values.empty()) return false;
  return std::abs(left_values.front() - initial_values.front()) <= tol &&
         std::abs(right_values.front() - initial_values.back()) <= tol;
}

ParabolicBoundary sample_parabolic_boundary(const BoundaryDataSpec& spec, const RadialGrid& grid, double T,
                                            std::size_t time_samples) {
  if (time_samples < 2) throw ConfigError("need at least two time samples");
  ParabolicBoundary pb;
  pb.T = T;
  for (std::size_t j = 0; j < time_samples; ++j) {
    const double t = T * static_cast<double>(j) / static_cast<double>(time_samples - 1);
    pb.times.push_back(t);
    pb.left_values.push_back(evaluate_boundary(spec, 0.0, t));
    pb.right_values.push_back(evaluate_boundary(spec, 1.0, t));
  }
  for (double r : grid.nodes()) pb.initial_values.push_back(evaluate_boundary(spec, r, 0.0));
  return pb;
}

}  // namespace eqflow
