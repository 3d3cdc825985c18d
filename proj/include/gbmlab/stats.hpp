#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gbmlab/adjacency.hpp"
#include "gbmlab/model.hpp"

namespace gbmlab {

/**
 * Exact transitivity statistics of one graph.
 *
 * triangle_count is the unordered triangle count T; twopath_sum is the
 * ordered 2-path sum sum_i d_i(d_i-1). The global coefficient 6T / twopath_sum
 * is undefined when no 2-path exists (global_defined == false and global_cc
 * is NaN, never a silent zero). Local coefficients of degree-0/1 nodes are
 * zero, and average_cc divides by n including those nodes.
 */
struct ClusteringStats {
  std::uint64_t triangle_count = 0;
  std::uint64_t twopath_sum = 0;
  std::vector<int> degrees;
  std::vector<std::uint64_t> node_triangles;
  std::vector<double> local_cc;
  double global_cc = std::numeric_limits<double>::quiet_NaN();
  bool global_defined = false;
  double average_cc = 0.0;
};

namespace detail {

inline void finish_stats(ClusteringStats& s) {
  const std::size_t n = s.degrees.size();
  s.local_cc.assign(n, 0.0);
  double local_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s.degrees[i];
    if (s.degrees[i] >= 2) {
      s.local_cc[i] =
          static_cast<double>(2 * s.node_triangles[i]) / (d * (d - 1.0));
    }
    local_sum += s.local_cc[i];
  }
  s.average_cc = n > 0 ? local_sum / static_cast<double>(n) : 0.0;
  s.global_defined = s.twopath_sum > 0;
  s.global_cc = s.global_defined
                    ? static_cast<double>(6 * s.triangle_count) /
                          static_cast<double>(s.twopath_sum)
                    : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

/**
 * Counts each triangle once, from its minimum-id corner, by scanning that
 * node's neighbor pairs and testing membership on the sorted neighbor lists.
 * Cost is on the order of sum_i d_i^2.
 */
inline ClusteringStats compute_stats(const AdjacencyList& adj) {
  const int n = static_cast<int>(adj.neighbors.size());
  ClusteringStats s;
  s.degrees.resize(n);
  s.node_triangles.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t d = adj.neighbors[i].size();
    s.degrees[i] = static_cast<int>(d);
    if (d >= 2) s.twopath_sum += d * (d - 1);
  }
  for (int i = 0; i < n; ++i) {
    const auto& nb = adj.neighbors[i];
    const auto first = std::upper_bound(nb.begin(), nb.end(), i);
    for (auto jt = first; jt != nb.end(); ++jt) {
      const auto& nbj = adj.neighbors[*jt];
      for (auto kt = jt + 1; kt != nb.end(); ++kt) {
        if (std::binary_search(nbj.begin(), nbj.end(), *kt)) {
          ++s.triangle_count;
          ++s.node_triangles[i];
          ++s.node_triangles[*jt];
          ++s.node_triangles[*kt];
        }
      }
    }
  }
  detail::finish_stats(s);
  return s;
}

/**
 * Independent oracle: evaluates the defining sums literally over all ordered
 * triples, calling edge_indicator on raw positions/labels without building an
 * adjacency structure. O(n^3); refuses graphs above the cap.
 */
inline ClusteringStats brute_force_stats(const SampledGraph& g,
                                         int oracle_cap = 512) {
  const int n = static_cast<int>(g.positions.size());
  if (n > oracle_cap) {
    throw std::invalid_argument("brute_force_stats: n=" + std::to_string(n) +
                                " exceeds oracle cap " +
                                std::to_string(oracle_cap));
  }
  const auto edge = [&g](int a, int b) {
    return edge_indicator(g.positions[a], g.labels[a], g.positions[b],
                          g.labels[b], g.params);
  };

  ClusteringStats s;
  s.degrees.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && edge(i, j)) ++s.degrees[i];
    }
  }

  std::vector<std::uint64_t> delta(n, 0);  // ordered triangle sum at node i
  std::uint64_t triangle_ordered = 0;
  std::uint64_t twopath_ordered = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i || !edge(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j || !edge(j, k)) continue;
        ++twopath_ordered;
        if (edge(k, i)) {
          ++triangle_ordered;
          ++delta[i];
        }
      }
    }
  }

  s.triangle_count = triangle_ordered / 6;
  s.twopath_sum = twopath_ordered;
  s.node_triangles.resize(n);
  for (int i = 0; i < n; ++i) s.node_triangles[i] = delta[i] / 2;
  detail::finish_stats(s);
  return s;
}

/** Ordered sums (6T, sum_i d_i(d_i-1)): the global coefficient's numerator
 *  and denominator. */
struct OrderedSums {
  std::uint64_t triangle_sum = 0;
  std::uint64_t twopath_sum = 0;
};

inline OrderedSums empirical_sums(const AdjacencyList& adj) {
  const ClusteringStats s = compute_stats(adj);
  return OrderedSums{6 * s.triangle_count, s.twopath_sum};
}

}  // namespace gbmlab
