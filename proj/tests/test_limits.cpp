#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "gbmlab/adjacency.hpp"
#include "gbmlab/limits.hpp"
#include "gbmlab/model.hpp"
#include "gbmlab/rng.hpp"
#include "gbmlab/stats.hpp"

using namespace gbmlab;

TEST_CASE("regime classification") {
  CHECK(classify_regime(0.1, 0.08) == Regime::one);
  CHECK(classify_regime(0.2, 0.08) == Regime::two);
  CHECK(classify_regime(0.16, 0.08) == Regime::two);  // boundary
  CHECK_THROWS_AS(classify_regime(0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(classify_regime(0.05, 0.1), std::invalid_argument);
}

TEST_CASE("conditional triangle probability") {
  CHECK(triangle_prob(0.1, 0.1, true) == Approx(0.03).margin(1e-15));
  CHECK(triangle_prob(0.1, 0.08, false) == Approx(0.022).margin(1e-15));
  CHECK(triangle_prob(0.2, 0.08, false) == Approx(0.0256).margin(1e-15));
  // r_s = r_d erases community structure
  CHECK(triangle_prob(0.1, 0.1, false) == triangle_prob(0.1, 0.1, true));
}

TEST_CASE("conditional 2-path probability") {
  CHECK(twopath_prob(0.1, 0.05, TwoPathPattern::all_same) ==
        Approx(0.04).margin(1e-15));
  CHECK(twopath_prob(0.1, 0.05, TwoPathPattern::center_shares_one) ==
        Approx(0.02).margin(1e-15));
  CHECK(twopath_prob(0.1, 0.05, TwoPathPattern::leaves_share) ==
        Approx(0.01).margin(1e-15));
}

TEST_CASE("global limit: no-community reduction and balanced closed form") {
  for (double tau : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    CHECK(global_cc_limit(0.07, 0.07, tau) == Approx(0.75).margin(1e-14));
  }
  // balanced case, regime I: 3 r_s r_d / (r_s + r_d)^2
  for (double r_d : {0.05, 0.08, 0.12}) {
    const double r_s = 1.5 * r_d;
    const double expected = 3.0 * r_s * r_d / ((r_s + r_d) * (r_s + r_d));
    CHECK(global_cc_limit(r_s, r_d, 0.5) == Approx(expected).margin(1e-14));
  }
  // balanced case, regime II: 3 (r_s^2 + 4 r_d^2) / (4 (r_s + r_d)^2)
  for (double r_d : {0.02, 0.05}) {
    const double r_s = 3.0 * r_d;
    const double expected = 3.0 * (r_s * r_s + 4.0 * r_d * r_d) /
                            (4.0 * (r_s + r_d) * (r_s + r_d));
    CHECK(global_cc_limit(r_s, r_d, 0.5) == Approx(expected).margin(1e-14));
  }
  // symmetric in tau <-> 1 - tau
  for (double tau : {0.1, 0.25, 0.4}) {
    CHECK(global_cc_limit(0.12, 0.05, tau) ==
          Approx(global_cc_limit(0.12, 0.05, 1.0 - tau)).margin(1e-12));
  }
}

TEST_CASE("average limit: balanced equality and reductions") {
  for (double r_d : {0.04, 0.07}) {
    for (double lambda : {1.0, 1.5, 2.0, 3.5}) {
      const double r_s = lambda * r_d;
      CHECK(avg_cc_limit(r_s, r_d, 0.5) ==
            Approx(global_cc_limit(r_s, r_d, 0.5)).margin(1e-12));
    }
  }
  CHECK(avg_cc_limit(0.09, 0.09, 0.3) == Approx(0.75).margin(1e-14));
  for (double tau : {0.1, 0.3, 0.45}) {
    CHECK(avg_cc_limit(0.15, 0.06, tau) ==
          Approx(avg_cc_limit(0.15, 0.06, 1.0 - tau)).margin(1e-12));
  }
  // tau in {0,1}: single community, limit is the plain-RGG value
  CHECK(avg_cc_limit(0.2, 0.05, 0.0) == Approx(0.75).margin(1e-14));
  CHECK(avg_cc_limit(0.2, 0.05, 1.0) == Approx(0.75).margin(1e-14));
}

TEST_CASE("g landmarks") {
  for (int t = 0; t <= 20; ++t) {
    CHECK(std::fabs(g_of(1.0, t / 20.0) - 0.75) <= 1e-15);
  }
  CHECK(std::fabs(g_of(4.0, 0.5) - 0.6) <= 1e-15);
  // both branch formulas agree at the transition
  CHECK(g_of(Regime::one, 2.0, 0.5) == Approx(2.0 / 3.0).margin(1e-15));
  CHECK(g_of(Regime::two, 2.0, 0.5) == Approx(2.0 / 3.0).margin(1e-15));
  CHECK_THROWS_AS(g_of(0.99, 0.5), std::invalid_argument);
}

TEST_CASE("g matches the radius form at any scale") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = 1.0 + rng.uniform01() * 20.0;
    const double tau = rng.uniform01();
    const double r = 0.001 + rng.uniform01() * 0.02;
    CHECK(g_of(lambda, tau) ==
          Approx(global_cc_limit(lambda * r, r, tau)).margin(1e-12));
  }
}

TEST_CASE("f landmarks") {
  CHECK(std::fabs(f_of(1.0) - 0.75) <= 1e-15);
  CHECK(std::fabs(f_of(4.0) - 0.6) <= 1e-15);
  CHECK(f_of(Regime::one, 2.0) == Approx(2.0 / 3.0).margin(1e-15));
  CHECK(f_of(Regime::two, 2.0) == Approx(2.0 / 3.0).margin(1e-15));
  CHECK_THROWS_AS(f_of(0.5), std::invalid_argument);
}

TEST_CASE("h landmarks") {
  for (double lambda : {1.0, 1.7, 2.0, 4.0, 16.0, 64.0}) {
    CHECK(h_of(lambda, 0.5) == Approx(g_of(lambda, 0.5)).margin(1e-12));
  }
  for (int t = 0; t <= 10; ++t) {
    CHECK(h_of(1.0, t / 10.0) == Approx(0.75).margin(1e-14));
  }
  // frozen value computed by explicit branch arithmetic at (5, 0.3):
  // term1 = 0.3 * (3*0.09*25 + 4*0.91) / (4 * 2.2^2)
  // term2 = 0.7 * (3*0.49*25 + 4*0.3*1.7) / (4 * 3.8^2)
  const double term1 = 0.3 * (3.0 * 0.09 * 25.0 + 4.0 * 0.91) / (4.0 * 2.2 * 2.2);
  const double term2 =
      0.7 * (3.0 * 0.49 * 25.0 + 4.0 * 0.3 * 1.7) / (4.0 * 3.8 * 3.8);
  CHECK(h_of(5.0, 0.3) == Approx(term1 + term2).margin(1e-12));
  CHECK(h_of(5.0, 0.3) == Approx(0.63110248162816787).margin(1e-12));
}

TEST_CASE("lambda_star") {
  CHECK(std::fabs(lambda_star(0.5) - 4.0) <= 1e-12);
  for (double tau : {0.1, 0.2, 0.35}) {
    CHECK(lambda_star(tau) == Approx(lambda_star(1.0 - tau)).margin(1e-12));
  }
  CHECK(lambda_star(0.1) == Approx(3.15624596).margin(1e-6));
  CHECK_THROWS_AS(lambda_star(0.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_star(1.0), std::invalid_argument);

  // independent confirmation: the finite-difference slope of g(., 0.1)
  // changes sign within one 1e-4 step of lambda_star(0.1)
  const double step = 1e-4;
  double sign_change_at = 0.0;
  for (double l = 3.0; l < 3.3; l += step) {
    const double d1 = g_of(l + step, 0.1) - g_of(l, 0.1);
    if (d1 >= 0.0) {
      sign_change_at = l;
      break;
    }
  }
  REQUIRE(sign_change_at > 0.0);
  CHECK(std::fabs(sign_change_at - lambda_star(0.1)) <= 2.0 * step);
}

TEST_CASE("expected degrees") {
  // RGG reduction
  const auto rgg = validate_params(500, 0.5, 0.03, 0.03);
  CHECK(expected_degree(rgg, 1) == Approx(2.0 * 0.03 * 499).margin(1e-12));
  CHECK(expected_degree(rgg, 2) == Approx(2.0 * 0.03 * 499).margin(1e-12));

  const auto p = validate_params(1000, 0.5, 0.02, 0.01);
  CHECK(expected_degree(p, 1) == Approx(29.96).margin(1e-12));

  const auto single = validate_params(800, 1.0, 0.04, 0.01);
  CHECK(expected_degree(single, 1) == Approx(2.0 * 0.04 * 799).margin(1e-12));

  CHECK_THROWS_AS(expected_degree(p, 3), std::invalid_argument);
}

TEST_CASE("expected degree matches sampled means") {
  const int reps = 50;
  const auto base = validate_params(500, 0.5, 0.03, 0.015);
  const int n1 = base.n1();
  double mean1 = 0.0, mean2 = 0.0;
  std::vector<double> rep_mean1, rep_mean2;
  for (int r = 0; r < reps; ++r) {
    auto params = base;
    params.seed = derive_seed(4242, 0, r);
    const auto adj = build_adjacency(sample_graph(params));
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < base.n; ++i) {
      (i < n1 ? s1 : s2) += adj.degree(i);
    }
    rep_mean1.push_back(s1 / n1);
    rep_mean2.push_back(s2 / (base.n - n1));
    mean1 += rep_mean1.back();
    mean2 += rep_mean2.back();
  }
  mean1 /= reps;
  mean2 /= reps;
  double var1 = 0.0, var2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    var1 += (rep_mean1[r] - mean1) * (rep_mean1[r] - mean1);
    var2 += (rep_mean2[r] - mean2) * (rep_mean2[r] - mean2);
  }
  const double se1 = std::sqrt(var1 / (reps - 1) / reps);
  const double se2 = std::sqrt(var2 / (reps - 1) / reps);
  CHECK(std::fabs(mean1 - expected_degree(base, 1)) <= 3.0 * se1);
  CHECK(std::fabs(mean2 - expected_degree(base, 2)) <= 3.0 * se2);
}

TEST_CASE("expected ordered sums: exact reductions") {
  // single community
  const auto p0 = validate_params(100, 0.0, 0.1, 0.02);
  const auto sums0 = expected_ordered_sums(p0);
  const double n3 = 100.0 * 100.0 * 100.0;
  CHECK(sums0.triangle_sum == Approx(3.0 * 0.01 * n3).epsilon(1e-12));
  CHECK(sums0.twopath_sum == Approx(4.0 * 0.01 * n3).epsilon(1e-12));

  // RGG consistency: ratio 3/4
  const auto prgg = validate_params(64, 0.5, 0.05, 0.05);
  const auto sums = expected_ordered_sums(prgg);
  CHECK(sums.triangle_sum / sums.twopath_sum == Approx(0.75).margin(1e-14));
}

TEST_CASE("expected ordered sums match Monte Carlo") {
  const auto base = validate_params(1024, 0.5, 0.04, 0.02);
  const int reps = 5;
  double tri = 0.0, two = 0.0;
  for (int r = 0; r < reps; ++r) {
    auto params = base;
    params.seed = derive_seed(777, 3, r);
    const auto sums = empirical_sums(build_adjacency(sample_graph(params)));
    tri += static_cast<double>(sums.triangle_sum);
    two += static_cast<double>(sums.twopath_sum);
  }
  tri /= reps;
  two /= reps;
  const auto expected = expected_ordered_sums(base);
  CHECK(tri == Approx(expected.triangle_sum).epsilon(0.05));
  CHECK(two == Approx(expected.twopath_sum).epsilon(0.05));
}

TEST_CASE("expected per-node triangle sums: reductions and Monte Carlo") {
  const auto single = validate_params(200, 1.0, 0.05, 0.01);
  CHECK(expected_node_triangle_sum(single, 1) ==
        Approx(3.0 * 0.0025 * 200.0 * 200.0).epsilon(1e-12));

  const auto rgg = validate_params(300, 0.4, 0.03, 0.03);
  CHECK(expected_node_triangle_sum(rgg, 1) ==
        Approx(3.0 * 0.0009 * 300.0 * 300.0).epsilon(1e-12));
  CHECK(expected_node_triangle_sum(rgg, 2) ==
        Approx(expected_node_triangle_sum(rgg, 1)).epsilon(1e-12));

  // regime II Monte Carlo
  const auto base = validate_params(1024, 0.3, 0.06, 0.02);
  const int n1 = base.n1();
  const int reps = 6;
  double mean1 = 0.0, mean2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    auto params = base;
    params.seed = derive_seed(31, 9, r);
    const auto stats = compute_stats(build_adjacency(sample_graph(params)));
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < base.n; ++i) {
      (i < n1 ? s1 : s2) += 2.0 * static_cast<double>(stats.node_triangles[i]);
    }
    mean1 += s1 / n1;
    mean2 += s2 / (base.n - n1);
  }
  mean1 /= reps;
  mean2 /= reps;
  CHECK(mean1 == Approx(expected_node_triangle_sum(base, 1)).epsilon(0.10));
  CHECK(mean2 == Approx(expected_node_triangle_sum(base, 2)).epsilon(0.10));
}

TEST_CASE("branch continuity at the transition") {
  for (int t = 0; t <= 100; ++t) {
    const double tau = t / 100.0;
    for (double r_d : {0.02, 0.06, 0.1}) {
      const double r_s = 2.0 * r_d;
      CHECK(std::fabs(global_cc_limit(Regime::one, r_s, r_d, tau) -
                      global_cc_limit(Regime::two, r_s, r_d, tau)) <= 1e-12);
      CHECK(std::fabs(avg_cc_limit(Regime::one, r_s, r_d, tau) -
                      avg_cc_limit(Regime::two, r_s, r_d, tau)) <= 1e-12);
    }
    CHECK(std::fabs(g_of(Regime::one, 2.0, tau) -
                    g_of(Regime::two, 2.0, tau)) <= 1e-12);
    CHECK(std::fabs(h_of(Regime::one, 2.0, tau) -
                    h_of(Regime::two, 2.0, tau)) <= 1e-12);
  }
  CHECK(std::fabs(f_of(Regime::one, 2.0) - f_of(Regime::two, 2.0)) <= 1e-12);
}

TEST_CASE("limits are scale invariant") {
  Rng rng(88);
  for (int trial = 0; trial < 30; ++trial) {
    const double r_d = 0.001 + rng.uniform01() * 0.01;
    const double lambda = 1.0 + rng.uniform01() * 8.0;
    const double tau = rng.uniform01();
    const double r_s = lambda * r_d;
    const double g0 = global_cc_limit(r_s, r_d, tau);
    const double a0 = avg_cc_limit(r_s, r_d, tau);
    for (double c : {0.001, 0.137, 2.5, 17.0}) {
      CHECK(std::fabs(global_cc_limit(c * r_s, c * r_d, tau) - g0) <= 1e-12);
      CHECK(std::fabs(avg_cc_limit(c * r_s, c * r_d, tau) - a0) <= 1e-12);
    }
  }
}

TEST_CASE("identity g(.,1/2) = f = h(.,1/2) on the lambda grid") {
  for (double lambda = 1.0; lambda <= 64.0 + 1e-9; lambda += 0.25) {
    const double f = f_of(lambda);
    CHECK(std::fabs(g_of(lambda, 0.5) - f) <= 1e-12);
    CHECK(std::fabs(h_of(lambda, 0.5) - f) <= 1e-12);
  }
}

TEST_CASE("g and h are symmetric about tau = 1/2") {
  for (double lambda = 1.0; lambda <= 64.0 + 1e-9; lambda += 3.15) {
    for (int t = 1; t < 50; ++t) {
      const double tau = t / 100.0;
      CHECK(std::fabs(g_of(lambda, tau) - g_of(lambda, 1.0 - tau)) <= 1e-12);
      CHECK(std::fabs(h_of(lambda, tau) - h_of(lambda, 1.0 - tau)) <= 1e-12);
    }
  }
}

TEST_CASE("g stays strictly below 3/4 away from lambda = 1") {
  for (double lambda = 1.25; lambda <= 64.0 + 1e-9; lambda += 0.25) {
    for (int t = 1; t <= 99; ++t) {
      const double tau = t / 100.0;
      REQUIRE(g_of(lambda, tau) < 0.75);
    }
  }
}

TEST_CASE("monotonic intervals of f and the argmin of g") {
  for (int i = 0; i < 3000; ++i) {
    REQUIRE(f_of(1.0 + (i + 1) * 1e-3) < f_of(1.0 + i * 1e-3));
  }
  for (int i = 0; i < 12000; ++i) {
    REQUIRE(f_of(4.0 + (i + 1) * 1e-3) > f_of(4.0 + i * 1e-3));
  }
  for (int t = 1; t <= 9; ++t) {
    const double tau = t / 10.0;
    double best_l = 1.0, best_g = g_of(1.0, tau);
    for (int i = 0; i <= 7000; ++i) {
      const double l = 1.0 + i * 1e-3;
      const double v = g_of(l, tau);
      if (v < best_g) {
        best_g = v;
        best_l = l;
      }
    }
    CHECK(std::fabs(best_l - lambda_star(tau)) <= 1.5e-3);
  }
}

TEST_CASE("global limit equals the expected-ordered-sums ratio") {
  Rng rng(4040);
  for (int trial = 0; trial < 40; ++trial) {
    const double r_d = 0.002 + rng.uniform01() * 0.05;
    const double lambda = 1.0 + rng.uniform01() * 6.0;
    const double tau = rng.uniform01();
    const double r_s = std::min(lambda * r_d, 0.5);
    const auto p = validate_params(512, tau, r_s, r_d);
    const auto sums = expected_ordered_sums(p);
    CHECK(std::fabs(global_cc_limit(r_s, r_d, tau) -
                    sums.triangle_sum / sums.twopath_sum) <= 1e-12);
  }
}

TEST_CASE("evaluate_limits bundles a consistent view") {
  const auto ev = evaluate_limits(0.12, 0.05, 0.3);
  CHECK(ev.regime == Regime::two);
  CHECK(ev.global_limit > 0.0);
  CHECK(ev.global_limit <= 0.75);
  CHECK(ev.average_limit > 0.0);
  CHECK(ev.average_limit <= 0.75);
  CHECK(ev.triangle_prob_same == Approx(3.0 * 0.12 * 0.12).margin(1e-15));
  CHECK(ev.triangle_prob_mixed == Approx(4.0 * 0.05 * 0.05).margin(1e-15));
  CHECK(ev.twopath_prob_center_shares_one ==
        Approx(4.0 * 0.12 * 0.05).margin(1e-15));

  const auto ev1 = evaluate_limits(0.09, 0.06, 0.5);
  CHECK(ev1.regime == Regime::one);
  CHECK(ev1.triangle_prob_mixed ==
        Approx(4.0 * 0.09 * 0.06 - 0.09 * 0.09).margin(1e-15));
}
