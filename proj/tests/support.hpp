#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "eqflow/grid.hpp"
#include "eqflow/profile.hpp"

namespace testing {

/// log2(e_i / e_{i+1}) for successive halvings of the mesh.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(std::log2(errors[i - 1] / errors[i]));
  return out;
}

inline double min_of(const std::vector<double>& v) {
  double m = INFINITY;
  for (double x : v) m = std::min(m, x);
  return m;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

  /// Piecewise linear through (i/K, v_i), v_0 = 0, v_i uniform in [lo, hi].
  std::vector<double> knot_profile(const eqflow::RadialGrid& g, int K, double lo, double hi) {
    std::vector<double> kv{0.0};
    for (int i = 1; i <= K; ++i) kv.push_back(uniform(lo, hi));
    std::vector<double> h(g.node_count());
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double x = g[i] * K;
      const int s = std::min(K - 1, static_cast<int>(x));
      h[i] = kv[s] + (x - s) * (kv[s + 1] - kv[s]);
    }
    return h;
  }
};

inline eqflow::GridPtr grid(std::size_t N, double gamma = 2.0) {
  return std::make_shared<const eqflow::RadialGrid>(N, gamma);
}

/// Piecewise linear interpolation through (xs, ys) sampled at the grid nodes.
inline std::vector<double> piecewise_linear(const eqflow::RadialGrid& g, const std::vector<double>& xs,
                                            const std::vector<double>& ys) {
  std::vector<double> h;
  for (double r : g.nodes()) {
    std::size_t s = 0;
    while (s + 2 < xs.size() && r > xs[s + 1]) ++s;
    const double f = (r - xs[s]) / (xs[s + 1] - xs[s]);
    h.push_back(ys[s] + f * (ys[s + 1] - ys[s]));
  }
  return h;
}

/**
 * Exhaustive oracle: longest node subsequence whose j-th element satisfies
 * classes[j % period](node). Tries every subset (n <= 20).
 */
inline std::size_t brute_force_chain(std::size_t n, std::size_t period,
                                     const std::function<bool(std::size_t node, std::size_t phase)>& fits) {
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t len = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      ok = fits(i, len % period);
      ++len;
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

/// O(n^2) dynamic programme for the same quantity (independent of the greedy sweep).
inline std::size_t dp_chain(std::size_t n, std::size_t period,
                            const std::function<bool(std::size_t node, std::size_t phase)>& fits) {
  // len[i] = lengths L such that some chain of length L ends at node i (as a bitset over L).
  std::vector<std::vector<bool>> ends(n, std::vector<bool>(n + 2, false));
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (fits(i, 0)) ends[i][1] = true;
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t L = 1; L <= j + 1; ++L) {
        if (ends[j][L] && fits(i, L % period)) ends[i][L + 1] = true;
      }
    }
    for (std::size_t L = 1; L <= i + 1; ++L) if (ends[i][L]) best = std::max(best, L);
  }
  return best;
}

/// Largest M <= L with M = 1 (mod period); 0 when L = 0.
inline std::size_t clamp_mod(std::size_t L, std::size_t period) {
  while (L > 0 && L % period != 1) --L;
  return L;
}

}  // namespace testing
