// gbmlab command-line front end: sampling, statistics, closed-form limits,
// the quadrature oracle suite, Monte Carlo experiments, and figure data.
//
// Exit codes: 0 success, 1 invalid invocation/parameters, 2 runtime failure
// (oracle tolerance breach, infeasible-only experiment grid).

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gbmlab/gbmlab.hpp"

namespace {

using nlohmann::json;

// Failure of a numeric check at runtime (exit 2), as opposed to bad input.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  return os;
}

struct SampleArgs {
  int n = 0;
  double tau = 0.0;
  double r_s = 0.0;
  double r_d = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_sample(const SampleArgs& a) {
  const auto params = gbmlab::validate_params(a.n, a.tau, a.r_s, a.r_d, a.seed);
  const auto graph = gbmlab::sample_graph(params);
  const auto adj = gbmlab::build_adjacency(graph);
  auto os = open_output(a.out);
  gbmlab::write_graph_dump(os, graph, adj);
  const double mean_degree =
      params.n > 0 ? 2.0 * static_cast<double>(adj.edge_count) / params.n : 0.0;
  std::cout << "n " << params.n << "\n"
            << "edges " << adj.edge_count << "\n"
            << "mean_degree " << gbmlab::to_g17(mean_degree) << "\n";
}

struct StatsArgs {
  std::string in;
  bool json_out = false;
  SampleArgs sample;
  bool have_sample_flags = false;
};

void run_stats(const StatsArgs& a) {
  gbmlab::AdjacencyList adj;
  if (!a.in.empty()) {
    std::ifstream is(a.in);
    if (!is) throw std::invalid_argument("cannot open input file: " + a.in);
    adj = gbmlab::read_graph_dump(is).to_adjacency();
  } else if (a.have_sample_flags) {
    const auto params = gbmlab::validate_params(a.sample.n, a.sample.tau,
                                                a.sample.r_s, a.sample.r_d,
                                                a.sample.seed);
    adj = gbmlab::build_adjacency(gbmlab::sample_graph(params));
  } else {
    throw std::invalid_argument(
        "stats needs either --in FILE or --n/--tau/--rs/--rd/--seed");
  }
  const auto stats = gbmlab::compute_stats(adj);
  const std::size_t n = stats.degrees.size();
  if (a.json_out) {
    json j;
    j["n"] = n;
    j["edges"] = adj.edge_count;
    j["triangles"] = stats.triangle_count;
    j["twopath_sum"] = stats.twopath_sum;
    j["global_defined"] = stats.global_defined;
    j["global_cc"] = stats.global_defined ? json(stats.global_cc) : json();
    j["average_cc"] = stats.average_cc;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "n " << n << "\n"
              << "edges " << adj.edge_count << "\n"
              << "triangles " << stats.triangle_count << "\n"
              << "twopath_sum " << stats.twopath_sum << "\n";
    if (stats.global_defined) {
      std::cout << "global_cc " << gbmlab::to_g17(stats.global_cc) << "\n";
    } else {
      std::cout << "global_cc undefined\n";
    }
    std::cout << "average_cc " << gbmlab::to_g17(stats.average_cc) << "\n";
  }
}

struct LimitsArgs {
  std::optional<double> lambda;
  std::optional<double> r_s;
  std::optional<double> r_d;
  double tau = 0.5;
  bool json_out = false;
};

void run_limits(const LimitsArgs& a) {
  const bool lambda_form = a.lambda.has_value();
  if (lambda_form == (a.r_s.has_value() || a.r_d.has_value())) {
    throw std::invalid_argument(
        "limits needs either --lambda or the pair --rs/--rd");
  }
  json j;
  std::ostringstream text;
  if (lambda_form) {
    const double lambda = *a.lambda;
    const double global = gbmlab::g_of(lambda, a.tau);
    const double average = gbmlab::h_of(lambda, a.tau);
    const gbmlab::Regime regime =
        lambda < 2.0 ? gbmlab::Regime::one : gbmlab::Regime::two;
    text << "regime " << gbmlab::regime_name(regime) << "\n"
         << "lambda " << gbmlab::to_g17(lambda) << "\n"
         << "tau " << gbmlab::to_g17(a.tau) << "\n"
         << "global_limit " << gbmlab::to_g17(global) << "\n"
         << "average_limit " << gbmlab::to_g17(average) << "\n";
    j["regime"] = gbmlab::regime_name(regime);
    j["lambda"] = lambda;
    j["tau"] = a.tau;
    j["global_limit"] = global;
    j["average_limit"] = average;
    if (a.tau > 0.0 && a.tau < 1.0) {
      const double ls = gbmlab::lambda_star(a.tau);
      text << "lambda_star " << gbmlab::to_g17(ls) << "\n";
      j["lambda_star"] = ls;
    }
  } else {
    if (!a.r_s.has_value() || !a.r_d.has_value()) {
      throw std::invalid_argument("limits needs both --rs and --rd");
    }
    const auto ev = gbmlab::evaluate_limits(*a.r_s, *a.r_d, a.tau);
    text << "regime " << gbmlab::regime_name(ev.regime) << "\n"
         << "r_s " << gbmlab::to_g17(*a.r_s) << "\n"
         << "r_d " << gbmlab::to_g17(*a.r_d) << "\n"
         << "tau " << gbmlab::to_g17(a.tau) << "\n"
         << "global_limit " << gbmlab::to_g17(ev.global_limit) << "\n"
         << "average_limit " << gbmlab::to_g17(ev.average_limit) << "\n"
         << "triangle_prob_same " << gbmlab::to_g17(ev.triangle_prob_same)
         << "\n"
         << "triangle_prob_mixed " << gbmlab::to_g17(ev.triangle_prob_mixed)
         << "\n"
         << "twopath_prob_all_same "
         << gbmlab::to_g17(ev.twopath_prob_all_same) << "\n"
         << "twopath_prob_center_shares_one "
         << gbmlab::to_g17(ev.twopath_prob_center_shares_one) << "\n"
         << "twopath_prob_leaves_share "
         << gbmlab::to_g17(ev.twopath_prob_leaves_share) << "\n";
    j["regime"] = gbmlab::regime_name(ev.regime);
    j["r_s"] = *a.r_s;
    j["r_d"] = *a.r_d;
    j["tau"] = a.tau;
    j["global_limit"] = ev.global_limit;
    j["average_limit"] = ev.average_limit;
    j["triangle_prob_same"] = ev.triangle_prob_same;
    j["triangle_prob_mixed"] = ev.triangle_prob_mixed;
    j["twopath_prob_all_same"] = ev.twopath_prob_all_same;
    j["twopath_prob_center_shares_one"] = ev.twopath_prob_center_shares_one;
    j["twopath_prob_leaves_share"] = ev.twopath_prob_leaves_share;
  }
  if (a.json_out) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text.str();
  }
}

// Closed-form tolerances for the oracle suite.
constexpr double kOracleTolerance = 5e-3;
constexpr double kAnchorTolerance = 1e-3;

void run_oracle_check(int grid_m) {
  using gbmlab::Community;
  const std::array<Community, 3> sss{Community::one, Community::one,
                                     Community::one};
  const std::array<Community, 3> ssd{Community::one, Community::one,
                                     Community::two};
  const std::array<Community, 3> dss{Community::two, Community::one,
                                     Community::one};
  const std::array<Community, 3> sdd{Community::one, Community::two,
                                     Community::two};

  const std::vector<std::pair<double, double>> radius_pairs = {
      {0.1, 0.1}, {0.1, 0.08}, {0.2, 0.08}, {0.15, 0.05}};
  const gbmlab::QuadratureConfig cfg{grid_m, 0.5};

  double max_dev = 0.0;
  std::string worst;
  const auto check = [&](const std::string& name, double estimate,
                         double closed) {
    const double dev = std::fabs(estimate - closed);
    std::cout << name << " quad " << gbmlab::to_g17(estimate) << " closed "
              << gbmlab::to_g17(closed) << " dev " << gbmlab::to_g17(dev)
              << "\n";
    if (dev > max_dev) {
      max_dev = dev;
      worst = name;
    }
  };

  for (const auto& [r_s, r_d] : radius_pairs) {
    const std::string tag =
        " r_s=" + gbmlab::to_g17(r_s) + " r_d=" + gbmlab::to_g17(r_d);
    check("triangle all-same" + tag,
          gbmlab::triangle_prob_quadrature(r_s, r_d, sss, cfg),
          gbmlab::triangle_prob(r_s, r_d, true));
    check("triangle mixed(1,1,2)" + tag,
          gbmlab::triangle_prob_quadrature(r_s, r_d, ssd, cfg),
          gbmlab::triangle_prob(r_s, r_d, false));
    check("triangle mixed(2,1,1)" + tag,
          gbmlab::triangle_prob_quadrature(r_s, r_d, dss, cfg),
          gbmlab::triangle_prob(r_s, r_d, false));
    check("twopath all-same" + tag,
          gbmlab::twopath_prob_quadrature(r_s, r_d, sss, cfg),
          gbmlab::twopath_prob(r_s, r_d, gbmlab::TwoPathPattern::all_same));
    check("twopath center-shares-one" + tag,
          gbmlab::twopath_prob_quadrature(r_s, r_d, ssd, cfg),
          gbmlab::twopath_prob(r_s, r_d,
                               gbmlab::TwoPathPattern::center_shares_one));
    check("twopath leaves-share" + tag,
          gbmlab::twopath_prob_quadrature(r_s, r_d, sdd, cfg),
          gbmlab::twopath_prob(r_s, r_d,
                               gbmlab::TwoPathPattern::leaves_share));
  }

  const std::vector<double> anchors = {0.1, 0.5, 0.9};
  double max_anchor_dev = 0.0;
  for (const auto& [r_s, r_d] : {std::pair{0.1, 0.08}, std::pair{0.2, 0.08}}) {
    const double dev =
        gbmlab::anchor_invariance_check(r_s, r_d, ssd, anchors, grid_m);
    std::cout << "anchor invariance r_s=" << gbmlab::to_g17(r_s)
              << " r_d=" << gbmlab::to_g17(r_d) << " dev "
              << gbmlab::to_g17(dev) << "\n";
    max_anchor_dev = std::max(max_anchor_dev, dev);
  }

  std::cout << "max_deviation " << gbmlab::to_g17(max_dev) << " (tolerance "
            << gbmlab::to_g17(kOracleTolerance) << ")\n"
            << "max_anchor_deviation " << gbmlab::to_g17(max_anchor_dev)
            << " (tolerance " << gbmlab::to_g17(kAnchorTolerance) << ")\n";
  if (max_dev > kOracleTolerance) {
    throw CheckFailure("oracle tolerance breach at: " + worst);
  }
  if (max_anchor_dev > kAnchorTolerance) {
    throw CheckFailure("anchor invariance tolerance breach");
  }
  std::cout << "oracle-check pass\n";
}

struct ExperimentArgs {
  std::string config_path;
  std::string out_override;
  std::string convergence_out;
  unsigned threads = 0;  // 0 = hardware
};

unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("GBM_LAB_THREADS")) {
    const std::string value(env);
    if (!value.empty()) {
      const auto parsed =
          gbmlab::parse_unsigned(value, "GBM_LAB_THREADS");
      return parsed == 0 ? gbmlab::hardware_threads()
                         : static_cast<unsigned>(parsed);
    }
  }
  return requested == 0 ? gbmlab::hardware_threads() : requested;
}

void run_experiment_cmd(const ExperimentArgs& a) {
  std::ifstream is(a.config_path);
  if (!is) {
    throw std::invalid_argument("cannot open config file: " + a.config_path);
  }
  auto cfg = gbmlab::parse_experiment_config(is);
  const std::string out_path =
      !a.out_override.empty() ? a.out_override : cfg.output_path;
  if (out_path.empty()) {
    throw std::invalid_argument(
        "no output path: set 'output' in the config or pass --out");
  }
  const unsigned threads = resolve_threads(a.threads);
  const auto result = gbmlab::run_experiment(cfg, threads);
  for (const auto& cell : result.skipped) {
    std::cerr << "skipped cell n=" << cell.n << " lambda="
              << gbmlab::to_g17(cell.lambda) << " tau="
              << gbmlab::to_g17(cell.tau) << ": " << cell.reason << "\n";
  }
  if (result.records.empty()) {
    throw CheckFailure("all cells infeasible; nothing to run");
  }
  {
    auto os = open_output(out_path);
    gbmlab::write_experiment_csv(os, result);
  }
  if (!a.convergence_out.empty()) {
    auto os = open_output(a.convergence_out);
    gbmlab::write_convergence_csv(
        os, gbmlab::convergence_table(cfg, result));
  }
  std::cout << "records " << result.records.size() << "\n"
            << "skipped_cells " << result.skipped.size() << "\n"
            << "output " << out_path << "\n";
}

void run_figures(const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  const auto fig1_path = (dir / "fig1.csv").string();
  const auto fig2_path = (dir / "fig2.csv").string();
  {
    auto os = open_output(fig1_path);
    gbmlab::write_fig1_csv(os, gbmlab::figure1_data());
  }
  {
    auto os = open_output(fig2_path);
    gbmlab::write_fig2_csv(os, gbmlab::figure2_data());
  }
  std::cout << "wrote " << fig1_path << "\n" << "wrote " << fig2_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric block model transitivity laboratory"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* cmd_sample = app.add_subcommand("sample", "Sample a graph and dump it");
  cmd_sample->add_option("--n", sample.n, "node count")->required();
  cmd_sample->add_option("--tau", sample.tau, "community-1 fraction")
      ->required();
  cmd_sample->add_option("--rs", sample.r_s, "same-community radius")
      ->required();
  cmd_sample->add_option("--rd", sample.r_d, "cross-community radius")
      ->required();
  cmd_sample->add_option("--seed", sample.seed, "RNG seed");
  cmd_sample->add_option("--out", sample.out, "output dump file")->required();
  cmd_sample->callback([&] { run_sample(sample); });

  StatsArgs stats;
  auto* cmd_stats =
      app.add_subcommand("stats", "Clustering statistics of a graph");
  cmd_stats->add_option("--in", stats.in, "graph dump file");
  auto* st_n = cmd_stats->add_option("--n", stats.sample.n, "node count");
  cmd_stats->add_option("--tau", stats.sample.tau, "community-1 fraction");
  cmd_stats->add_option("--rs", stats.sample.r_s, "same-community radius");
  cmd_stats->add_option("--rd", stats.sample.r_d, "cross-community radius");
  cmd_stats->add_option("--seed", stats.sample.seed, "RNG seed");
  cmd_stats->add_flag("--json", stats.json_out, "machine-readable output");
  cmd_stats->callback([&, st_n] {
    stats.have_sample_flags = st_n->count() > 0;
    run_stats(stats);
  });

  LimitsArgs limits;
  double lambda_opt = 0.0, rs_opt = 0.0, rd_opt = 0.0;
  auto* cmd_limits =
      app.add_subcommand("limits", "Closed-form clustering limits");
  auto* lo = cmd_limits->add_option("--lambda", lambda_opt, "r_s / r_d >= 1");
  auto* ro_s = cmd_limits->add_option("--rs", rs_opt, "same-community radius");
  auto* ro_d = cmd_limits->add_option("--rd", rd_opt, "cross-community radius");
  cmd_limits->add_option("--tau", limits.tau, "community-1 fraction")
      ->required();
  cmd_limits->add_flag("--json", limits.json_out, "machine-readable output");
  cmd_limits->callback([&, lo, ro_s, ro_d] {
    if (lo->count() > 0) limits.lambda = lambda_opt;
    if (ro_s->count() > 0) limits.r_s = rs_opt;
    if (ro_d->count() > 0) limits.r_d = rd_opt;
    run_limits(limits);
  });

  int grid_m = 8192;
  auto* cmd_oracle = app.add_subcommand(
      "oracle-check", "Quadrature verification of the probability formulas");
  cmd_oracle->add_option("--grid-m", grid_m, "grid points per axis (>= 64)");
  cmd_oracle->callback([&] { run_oracle_check(grid_m); });

  ExperimentArgs exp;
  auto* cmd_exp =
      app.add_subcommand("experiment", "Monte Carlo convergence experiment");
  cmd_exp->add_option("--config", exp.config_path, "key=value config file")
      ->required();
  cmd_exp->add_option("--out", exp.out_override,
                      "output CSV (overrides config)");
  cmd_exp->add_option("--convergence-out", exp.convergence_out,
                      "also write the per-n error table here");
  cmd_exp->add_option("--threads", exp.threads,
                      "worker threads (default: hardware)");
  cmd_exp->callback([&] { run_experiment_cmd(exp); });

  std::string out_dir = ".";
  auto* cmd_figs = app.add_subcommand("figures", "Write fig1.csv and fig2.csv");
  cmd_figs->add_option("--out-dir", out_dir, "output directory");
  cmd_figs->callback([&] { run_figures(out_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CheckFailure& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
