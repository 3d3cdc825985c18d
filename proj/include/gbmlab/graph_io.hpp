#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbmlab/adjacency.hpp"
#include "gbmlab/format.hpp"
#include "gbmlab/model.hpp"

namespace gbmlab {

// Plain-text graph dump: one line per node "id position label" (ids 1-based,
// label 1 or 2), then one line per edge "i j" with i < j, sorted.

inline void write_graph_dump(std::ostream& os, const SampledGraph& g,
                             const AdjacencyList& adj) {
  const int n = static_cast<int>(g.positions.size());
  for (int i = 0; i < n; ++i) {
    os << (i + 1) << ' ' << to_g17(g.positions[i]) << ' '
       << (g.labels[i] == Community::one ? 1 : 2) << '\n';
  }
  for (int i = 0; i < n; ++i) {
    for (int j : adj.neighbors[i]) {
      if (j > i) os << (i + 1) << ' ' << (j + 1) << '\n';
    }
  }
}

/** Parsed dump; edges are 0-based (i, j) pairs with i < j. */
struct GraphDump {
  std::vector<double> positions;
  std::vector<Community> labels;
  std::vector<std::pair<int, int>> edges;

  AdjacencyList to_adjacency() const {
    AdjacencyList adj;
    adj.neighbors.resize(positions.size());
    for (const auto& [a, b] : edges) {
      adj.neighbors[a].push_back(b);
      adj.neighbors[b].push_back(a);
    }
    for (auto& nb : adj.neighbors) std::sort(nb.begin(), nb.end());
    adj.edge_count = edges.size();
    return adj;
  }
};

inline GraphDump read_graph_dump(std::istream& is) {
  GraphDump dump;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    const std::string where = "graph dump line " + std::to_string(line_no);
    if (tok.size() == 3) {
      if (!dump.edges.empty()) {
        throw std::invalid_argument(where + ": node line after edge lines");
      }
      const long long id = parse_integer(tok[0], where + " id");
      if (id != static_cast<long long>(dump.positions.size()) + 1) {
        throw std::invalid_argument(where + ": node ids must be 1..n in order");
      }
      const double pos = parse_finite_double(tok[1], where + " position");
      if (!(pos >= 0.0 && pos < 1.0)) {
        throw std::invalid_argument(where + ": position out of [0, 1)");
      }
      const long long label = parse_integer(tok[2], where + " label");
      if (label != 1 && label != 2) {
        throw std::invalid_argument(where + ": label must be 1 or 2");
      }
      dump.positions.push_back(pos);
      dump.labels.push_back(label == 1 ? Community::one : Community::two);
    } else if (tok.size() == 2) {
      const long long a = parse_integer(tok[0], where + " endpoint");
      const long long b = parse_integer(tok[1], where + " endpoint");
      const long long n = static_cast<long long>(dump.positions.size());
      if (a < 1 || a > n || b < 1 || b > n || a == b) {
        throw std::invalid_argument(where + ": bad edge endpoints");
      }
      dump.edges.emplace_back(static_cast<int>(std::min(a, b)) - 1,
                              static_cast<int>(std::max(a, b)) - 1);
    } else {
      throw std::invalid_argument(where + ": expected 2 or 3 fields");
    }
  }
  return dump;
}

}  // namespace gbmlab
