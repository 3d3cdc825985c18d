#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "gbmlab/model.hpp"

namespace gbmlab {

/** Symmetric adjacency with per-node neighbor ids sorted ascending. */
struct AdjacencyList {
  std::vector<std::vector<int>> neighbors;
  std::uint64_t edge_count = 0;

  int degree(int i) const { return static_cast<int>(neighbors[i].size()); }
};

/**
 * Materializes the edge set by sweeping the position-sorted order: from each
 * node, candidate partners are collected walking forward along the circle
 * until the arc gap exceeds r_s, then filtered through edge_indicator.
 * Produces exactly the all-pairs edge set.
 */
inline AdjacencyList build_adjacency(const SampledGraph& g) {
  const int n = static_cast<int>(g.positions.size());
  const double r_s = g.params.r_s;
  // Slack keeps candidates whose arc gap rounds just above r_s; membership
  // itself is decided by edge_indicator on the periodic distance.
  const double window = r_s + 1e-9;

  std::vector<std::pair<int, int>> edges;
  for (int rank = 0; rank < n; ++rank) {
    const int i = g.sorted_index[rank];
    const double xi = g.positions[i];
    for (int step = 1; step < n; ++step) {
      const int t = rank + step;
      const bool wrapped = t >= n;
      const int j = g.sorted_index[wrapped ? t - n : t];
      const double gap = (wrapped ? g.positions[j] + 1.0 : g.positions[j]) - xi;
      if (gap > window) break;
      if (edge_indicator(xi, g.labels[i], g.positions[j], g.labels[j],
                         g.params)) {
        edges.emplace_back(std::min(i, j), std::max(i, j));
      }
    }
  }
  // A pair can be seen from both sweep directions when its distance is at
  // the 0.5 wrap boundary (or inside the slack window); dedupe.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  AdjacencyList adj;
  adj.neighbors.resize(n);
  for (const auto& [a, b] : edges) {
    adj.neighbors[a].push_back(b);
    adj.neighbors[b].push_back(a);
  }
  for (auto& nb : adj.neighbors) std::sort(nb.begin(), nb.end());
  adj.edge_count = edges.size();
  return adj;
}

}  // namespace gbmlab
