#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbmlab/model.hpp"

namespace gbmlab {

/**
 * Deterministic 2-D midpoint-rule quadrature over the free positions of a
 * triangle/2-path, with one node pinned at `anchor`. Verifies the conditional
 * probability formulas numerically, using only edge_indicator — never the
 * closed forms. Integrand cells are counted in integers, so results are exact
 * reproductions of the grid sum regardless of evaluation order.
 */
struct QuadratureConfig {
  int grid_m = 8192;
  double anchor = 0.5;
};

namespace detail {

inline void require_quadrature_config(const QuadratureConfig& cfg) {
  if (cfg.grid_m < 64) {
    throw std::invalid_argument("grid_m must be >= 64, got " +
                                std::to_string(cfg.grid_m));
  }
  if (!(cfg.anchor >= 0.0 && cfg.anchor < 1.0)) {
    throw std::invalid_argument("anchor must lie in [0, 1), got " +
                                std::to_string(cfg.anchor));
  }
}

inline void require_quadrature_radii(double r_s, double r_d) {
  if (!(r_d >= 0.0 && r_s >= r_d && r_s <= 0.5)) {
    throw std::invalid_argument("radii must satisfy 0 <= r_d <= r_s <= 0.5");
  }
}

inline double midpoint(int j, int m) {
  return (j + 0.5) / static_cast<double>(m);
}

}  // namespace detail

/**
 * Midpoint estimate of E[A_12 A_13 A_23 | X_1 = anchor] for the given label
 * assignment (z1, z2, z3). Conditioning on node 2 or 3 instead is realized by
 * rotating the labels into the first slot; the integrand is symmetric under
 * relabeling nodes together with their labels.
 */
inline double triangle_prob_quadrature(double r_s, double r_d,
                                       std::array<Community, 3> labels,
                                       const QuadratureConfig& cfg = {}) {
  detail::require_quadrature_radii(r_s, r_d);
  detail::require_quadrature_config(cfg);
  const int m = cfg.grid_m;
  const double x1 = cfg.anchor;
  const double r12 = labels[0] == labels[1] ? r_s : r_d;
  const double r13 = labels[0] == labels[2] ? r_s : r_d;
  const double r23 = labels[1] == labels[2] ? r_s : r_d;

  std::vector<char> a12(m), a13(m);
  for (int j = 0; j < m; ++j) {
    const double x = detail::midpoint(j, m);
    a12[j] = periodic_distance(x1, x) <= r12;
    a13[j] = periodic_distance(x1, x) <= r13;
  }

  std::uint64_t count = 0;
  for (int j = 0; j < m; ++j) {
    if (!a12[j]) continue;
    const double x2 = detail::midpoint(j, m);
    for (int k = 0; k < m; ++k) {
      if (a13[k] && periodic_distance(x2, detail::midpoint(k, m)) <= r23) {
        ++count;
      }
    }
  }
  return static_cast<double>(count) /
         (static_cast<double>(m) * static_cast<double>(m));
}

/**
 * Midpoint estimate of E[A_12 A_13 | X_1 = anchor]; node 1 is the path
 * center.
 */
inline double twopath_prob_quadrature(double r_s, double r_d,
                                      std::array<Community, 3> labels,
                                      const QuadratureConfig& cfg = {}) {
  detail::require_quadrature_radii(r_s, r_d);
  detail::require_quadrature_config(cfg);
  const int m = cfg.grid_m;
  const double x1 = cfg.anchor;
  const double r12 = labels[0] == labels[1] ? r_s : r_d;
  const double r13 = labels[0] == labels[2] ? r_s : r_d;

  std::uint64_t count13 = 0;
  std::vector<char> a12(m);
  for (int j = 0; j < m; ++j) {
    const double x = detail::midpoint(j, m);
    a12[j] = periodic_distance(x1, x) <= r12;
    if (periodic_distance(x1, x) <= r13) ++count13;
  }
  std::uint64_t count = 0;
  for (int j = 0; j < m; ++j) {
    if (a12[j]) count += count13;
  }
  return static_cast<double>(count) /
         (static_cast<double>(m) * static_cast<double>(m));
}

/**
 * Max pairwise deviation of the triangle quadrature across anchors; the
 * conditional probability is translation invariant, so this should stay
 * within quadrature error.
 */
inline double anchor_invariance_check(double r_s, double r_d,
                                      std::array<Community, 3> labels,
                                      const std::vector<double>& anchors,
                                      int grid_m = 8192) {
  if (anchors.size() < 2) {
    throw std::invalid_argument("anchor_invariance_check needs >= 2 anchors");
  }
  std::vector<double> values;
  values.reserve(anchors.size());
  for (double anchor : anchors) {
    values.push_back(
        triangle_prob_quadrature(r_s, r_d, labels, {grid_m, anchor}));
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      dev = std::max(dev, std::fabs(values[i] - values[j]));
    }
  }
  return dev;
}

}  // namespace gbmlab
