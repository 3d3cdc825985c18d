#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbmlab/rng.hpp"

namespace gbmlab {

enum class Community : std::uint8_t { one = 1, two = 2 };

/**
 * Model parameters for one experiment cell: n nodes on the unit circle,
 * a fraction tau of them in community 1, and connection radii r_s
 * (same community) and r_d (different communities), r_d <= r_s <= 0.5.
 */
struct GbmParams {
  int n = 0;
  double tau = 0.0;
  double r_s = 0.0;
  double r_d = 0.0;
  std::uint64_t seed = 0;

  // Community sizes under the nearest-integer rule; ties round half up.
  int n1() const { return static_cast<int>(std::floor(tau * n + 0.5)); }
  int n2() const { return n - n1(); }
};

inline GbmParams validate_params(int n, double tau, double r_s, double r_d,
                                 std::uint64_t seed = 0) {
  if (n < 1) {
    throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in [0, 1], got " +
                                std::to_string(tau));
  }
  if (!(r_s >= 0.0 && r_s <= 0.5)) {
    throw std::invalid_argument("r_s must lie in [0, 0.5], got " +
                                std::to_string(r_s));
  }
  if (!(r_d >= 0.0 && r_d <= 0.5)) {
    throw std::invalid_argument("r_d must lie in [0, 0.5], got " +
                                std::to_string(r_d));
  }
  if (r_s < r_d) {
    throw std::invalid_argument("radius-order violation: r_s (" +
                                std::to_string(r_s) + ") < r_d (" +
                                std::to_string(r_d) + ")");
  }
  return GbmParams{n, tau, r_s, r_d, seed};
}

// Circle metric on [0,1): min(|x-y|, 1-|x-y|), always in [0, 0.5].
inline double periodic_distance(double x, double y) {
  const double a = std::fabs(x - y);
  return std::min(a, 1.0 - a);
}

// Connection rule: within r_s for same-community pairs, within r_d
// otherwise. The comparison is inclusive.
inline bool edge_indicator(double x_i, Community z_i, double x_j, Community z_j,
                           double r_s, double r_d) {
  const double r = (z_i == z_j) ? r_s : r_d;
  return periodic_distance(x_i, x_j) <= r;
}

inline bool edge_indicator(double x_i, Community z_i, double x_j, Community z_j,
                           const GbmParams& params) {
  return edge_indicator(x_i, z_i, x_j, z_j, params.r_s, params.r_d);
}

/**
 * One sampled realization: node positions on [0,1), community labels
 * (ids 0..n1-1 are community 1), and a permutation of node ids sorted by
 * position for sweep-based neighbor queries. Immutable after sampling.
 */
struct SampledGraph {
  std::vector<double> positions;
  std::vector<Community> labels;
  std::vector<int> sorted_index;
  GbmParams params;
};

inline std::vector<int> position_sorted_index(const std::vector<double>& pos) {
  std::vector<int> idx(pos.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&pos](int a, int b) {
    return pos[a] != pos[b] ? pos[a] < pos[b] : a < b;
  });
  return idx;
}

inline SampledGraph sample_graph(const GbmParams& params) {
  SampledGraph g;
  g.params = params;
  g.positions.resize(params.n);
  g.labels.resize(params.n);

  Rng rng(params.seed);
  for (int i = 0; i < params.n; ++i) {
    g.positions[i] = rng.uniform01();
  }
  const int n1 = params.n1();
  for (int i = 0; i < params.n; ++i) {
    g.labels[i] = i < n1 ? Community::one : Community::two;
  }
  g.sorted_index = position_sorted_index(g.positions);
  return g;
}

}  // namespace gbmlab
