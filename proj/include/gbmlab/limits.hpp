#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "gbmlab/model.hpp"

namespace gbmlab {

/**
 * The two functional-form regimes of the clustering-coefficient limits.
 * The transition sits at r_s = 2 r_d (lambda = 2); the boundary itself is
 * assigned to regime II, and both branch formulas agree there.
 */
enum class Regime { one, two };

inline const char* regime_name(Regime r) {
  return r == Regime::one ? "I" : "II";
}

// Label pattern of a 2-path whose center is node 1.
enum class TwoPathPattern { all_same, center_shares_one, leaves_share };

// Value both clustering coefficients take in the no-community limit
// (lambda = 1 or tau in {0,1}).
inline constexpr double kRggClusteringLimit = 0.75;

namespace detail {

inline void require_finite_radii(double r_s, double r_d) {
  if (!(r_d >= 0.0) || !(r_s >= r_d) || !(r_s > 0.0)) {
    throw std::invalid_argument(
        "radii must satisfy 0 <= r_d <= r_s and r_s > 0 (r_s=" +
        std::to_string(r_s) + ", r_d=" + std::to_string(r_d) + ")");
  }
}

inline void require_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in [0, 1], got " +
                                std::to_string(tau));
  }
}

inline void require_lambda(double lambda) {
  if (!(lambda >= 1.0)) {
    throw std::invalid_argument("lambda must be >= 1, got " +
                                std::to_string(lambda));
  }
}

inline Regime regime_of(double r_s, double r_d) {
  return r_s >= 2.0 * r_d ? Regime::two : Regime::one;
}

}  // namespace detail

inline Regime classify_regime(double r_s, double r_d) {
  if (!(r_d > 0.0) || !(r_s >= r_d)) {
    throw std::invalid_argument(
        "classify_regime requires 0 < r_d <= r_s (r_s=" + std::to_string(r_s) +
        ", r_d=" + std::to_string(r_d) + ")");
  }
  return detail::regime_of(r_s, r_d);
}

/**
 * Conditional probability that three nodes at given radii form a triangle,
 * given the position of any one of them: 3 r_s^2 when all three share a
 * community; otherwise 4 r_s r_d - r_s^2 in regime I and 4 r_d^2 in
 * regime II.
 */
inline double triangle_prob(double r_s, double r_d, bool same_community) {
  detail::require_finite_radii(r_s, r_d);
  if (same_community) return 3.0 * r_s * r_s;
  return detail::regime_of(r_s, r_d) == Regime::one
             ? 4.0 * r_s * r_d - r_s * r_s
             : 4.0 * r_d * r_d;
}

/** Conditional 2-path probability; no regime dependence. */
inline double twopath_prob(double r_s, double r_d, TwoPathPattern pattern) {
  detail::require_finite_radii(r_s, r_d);
  switch (pattern) {
    case TwoPathPattern::all_same:
      return 4.0 * r_s * r_s;
    case TwoPathPattern::center_shares_one:
      return 4.0 * r_s * r_d;
    case TwoPathPattern::leaves_share:
      return 4.0 * r_d * r_d;
  }
  throw std::invalid_argument("unknown 2-path pattern");
}

/** Limit of the global clustering coefficient, forcing a branch. */
inline double global_cc_limit(Regime regime, double r_s, double r_d,
                              double tau) {
  detail::require_finite_radii(r_s, r_d);
  detail::require_tau(tau);
  const double a = tau * (1.0 - tau);
  const double num =
      regime == Regime::one
          ? (3.0 - 9.0 * a) * r_s * r_s + 3.0 * a * (4.0 * r_s * r_d - r_s * r_s)
          : (3.0 - 9.0 * a) * r_s * r_s + 12.0 * a * r_d * r_d;
  const double den = (4.0 - 12.0 * a) * r_s * r_s + 8.0 * a * r_s * r_d +
                     4.0 * a * r_d * r_d;
  return num / den;
}

inline double global_cc_limit(double r_s, double r_d, double tau) {
  detail::require_finite_radii(r_s, r_d);
  return global_cc_limit(detail::regime_of(r_s, r_d), r_s, r_d, tau);
}

/** Limit of the average clustering coefficient, forcing a branch. */
inline double avg_cc_limit(Regime regime, double r_s, double r_d, double tau) {
  detail::require_finite_radii(r_s, r_d);
  detail::require_tau(tau);
  // Mixed-triangle factor shared by both community terms.
  const double mixed = regime == Regime::one ? 4.0 * r_s * r_d - r_s * r_s
                                             : 4.0 * r_d * r_d;
  // Zero-weight terms are skipped: at tau = 0 (or 1) the vanished community
  // contributes nothing, and skipping avoids 0/0 when its mean degree is 0.
  double value = 0.0;
  if (tau > 0.0) {
    const double mean1 = tau * r_s + (1.0 - tau) * r_d;
    value += tau *
             (3.0 * tau * tau * r_s * r_s + (1.0 - tau * tau) * mixed) /
             (4.0 * mean1 * mean1);
  }
  if (tau < 1.0) {
    const double mean2 = tau * r_d + (1.0 - tau) * r_s;
    value += (1.0 - tau) *
             (3.0 * (1.0 - tau) * (1.0 - tau) * r_s * r_s +
              tau * (2.0 - tau) * mixed) /
             (4.0 * mean2 * mean2);
  }
  return value;
}

inline double avg_cc_limit(double r_s, double r_d, double tau) {
  detail::require_finite_radii(r_s, r_d);
  return avg_cc_limit(detail::regime_of(r_s, r_d), r_s, r_d, tau);
}

/**
 * Global-coefficient limit as a function of the community strength
 * lambda = r_s / r_d >= 1; equals global_cc_limit(lambda*r, r, tau) for
 * every r > 0.
 */
inline double g_of(Regime regime, double lambda, double tau) {
  detail::require_lambda(lambda);
  detail::require_tau(tau);
  const double a = tau * (1.0 - tau);
  const double l2 = lambda * lambda;
  const double num = regime == Regime::one
                         ? (3.0 - 9.0 * a) * l2 + 3.0 * a * (4.0 * lambda - l2)
                         : (3.0 - 9.0 * a) * l2 + 12.0 * a;
  const double den = (4.0 - 12.0 * a) * l2 + 8.0 * a * lambda + 4.0 * a;
  return num / den;
}

inline double g_of(double lambda, double tau) {
  detail::require_lambda(lambda);
  return g_of(lambda < 2.0 ? Regime::one : Regime::two, lambda, tau);
}

/** Balanced-community specialization of g: f(lambda) = g(lambda, 1/2). */
inline double f_of(Regime regime, double lambda) {
  detail::require_lambda(lambda);
  const double onepl = 1.0 + lambda;
  return regime == Regime::one
             ? 3.0 * lambda / (onepl * onepl)
             : 3.0 * (4.0 + lambda * lambda) / (4.0 * onepl * onepl);
}

inline double f_of(double lambda) {
  detail::require_lambda(lambda);
  return f_of(lambda < 2.0 ? Regime::one : Regime::two, lambda);
}

/** Average-coefficient limit as a function of (lambda, tau). */
inline double h_of(Regime regime, double lambda, double tau) {
  detail::require_lambda(lambda);
  detail::require_tau(tau);
  const double l2 = lambda * lambda;
  const double mixed =
      regime == Regime::one ? 4.0 * lambda - l2 : 4.0;
  const double mean1 = tau * lambda + (1.0 - tau);
  const double mean2 = tau + (1.0 - tau) * lambda;
  const double term1 =
      tau * (3.0 * tau * tau * l2 + (1.0 - tau * tau) * mixed) /
      (4.0 * mean1 * mean1);
  const double term2 =
      (1.0 - tau) *
      (3.0 * (1.0 - tau) * (1.0 - tau) * l2 + tau * (2.0 - tau) * mixed) /
      (4.0 * mean2 * mean2);
  return term1 + term2;
}

inline double h_of(double lambda, double tau) {
  detail::require_lambda(lambda);
  return h_of(lambda < 2.0 ? Regime::one : Regime::two, lambda, tau);
}

/**
 * The lambda minimizing g(., tau): g decreases on [1, lambda*] and increases
 * on [lambda*, infinity). Undefined for tau in {0, 1}, where g is constant.
 */
inline double lambda_star(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("lambda_star requires tau in (0, 1), got " +
                                std::to_string(tau));
  }
  const double a = tau * (1.0 - tau);
  return 1.5 + 0.5 * std::sqrt((9.0 - 11.0 * a) / (1.0 - 3.0 * a));
}

/** Expected degree of a node in the given community. */
inline double expected_degree(const GbmParams& p, int community) {
  if (community != 1 && community != 2) {
    throw std::invalid_argument("community must be 1 or 2");
  }
  const double n = p.n;
  return community == 1
             ? 2.0 * n * ((1.0 - p.tau) * p.r_d + p.tau * p.r_s) - 2.0 * p.r_s
             : 2.0 * n * ((1.0 - p.tau) * p.r_s + p.tau * p.r_d) - 2.0 * p.r_s;
}

/** Leading n^3-order expectations of the ordered triangle and 2-path sums. */
struct ExpectedOrderedSums {
  double triangle_sum = 0.0;
  double twopath_sum = 0.0;
};

inline ExpectedOrderedSums expected_ordered_sums(const GbmParams& p) {
  detail::require_finite_radii(p.r_s, p.r_d);
  detail::require_tau(p.tau);
  const double a = p.tau * (1.0 - p.tau);
  const double n3 = static_cast<double>(p.n) * p.n * p.n;
  const double tri =
      detail::regime_of(p.r_s, p.r_d) == Regime::one
          ? (1.0 - 3.0 * a) * 3.0 * p.r_s * p.r_s +
                3.0 * a * (4.0 * p.r_s * p.r_d - p.r_s * p.r_s)
          : (1.0 - 3.0 * a) * 3.0 * p.r_s * p.r_s + 12.0 * a * p.r_d * p.r_d;
  const double two = (1.0 - 3.0 * a) * 4.0 * p.r_s * p.r_s +
                     8.0 * a * p.r_s * p.r_d + 4.0 * a * p.r_d * p.r_d;
  return ExpectedOrderedSums{tri * n3, two * n3};
}

/**
 * Leading n^2-order expectation of the ordered per-node triangle sum
 * sum_{j != k} A_ij A_jk A_ki for a node i in the given community.
 */
inline double expected_node_triangle_sum(const GbmParams& p, int community) {
  if (community != 1 && community != 2) {
    throw std::invalid_argument("community must be 1 or 2");
  }
  detail::require_finite_radii(p.r_s, p.r_d);
  detail::require_tau(p.tau);
  const double tau = p.tau;
  const double n2 = static_cast<double>(p.n) * p.n;
  const double mixed = detail::regime_of(p.r_s, p.r_d) == Regime::one
                           ? 4.0 * p.r_s * p.r_d - p.r_s * p.r_s
                           : 4.0 * p.r_d * p.r_d;
  return community == 1
             ? n2 * (3.0 * tau * tau * p.r_s * p.r_s +
                     (1.0 - tau * tau) * mixed)
             : n2 * (3.0 * (1.0 - tau) * (1.0 - tau) * p.r_s * p.r_s +
                     tau * (2.0 - tau) * mixed);
}

/** One closed-form evaluation: regime, both limits, and the probabilities
 *  they are built from. */
struct LimitEval {
  Regime regime = Regime::one;
  double global_limit = 0.0;
  double average_limit = 0.0;
  double triangle_prob_same = 0.0;
  double triangle_prob_mixed = 0.0;
  double twopath_prob_all_same = 0.0;
  double twopath_prob_center_shares_one = 0.0;
  double twopath_prob_leaves_share = 0.0;
};

inline LimitEval evaluate_limits(double r_s, double r_d, double tau) {
  detail::require_finite_radii(r_s, r_d);
  detail::require_tau(tau);
  LimitEval ev;
  ev.regime = detail::regime_of(r_s, r_d);
  ev.global_limit = global_cc_limit(r_s, r_d, tau);
  ev.average_limit = avg_cc_limit(r_s, r_d, tau);
  ev.triangle_prob_same = triangle_prob(r_s, r_d, true);
  ev.triangle_prob_mixed = triangle_prob(r_s, r_d, false);
  ev.twopath_prob_all_same = twopath_prob(r_s, r_d, TwoPathPattern::all_same);
  ev.twopath_prob_center_shares_one =
      twopath_prob(r_s, r_d, TwoPathPattern::center_shares_one);
  ev.twopath_prob_leaves_share =
      twopath_prob(r_s, r_d, TwoPathPattern::leaves_share);
  return ev;
}

}  // namespace gbmlab
