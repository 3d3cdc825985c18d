#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbmlab/adjacency.hpp"
#include "gbmlab/format.hpp"
#include "gbmlab/limits.hpp"
#include "gbmlab/model.hpp"
#include "gbmlab/parallel.hpp"
#include "gbmlab/rng.hpp"
#include "gbmlab/stats.hpp"

namespace gbmlab {

/** Between-community radius: fixed, or the scaling rule r_d = c / n^alpha. */
struct RadiusRule {
  enum class Kind { fixed, power } kind = Kind::fixed;
  double fixed = 0.01;
  double c = 0.0;
  double alpha = 0.0;

  double r_d_for(int n) const {
    return kind == Kind::fixed ? fixed : c * std::pow(n, -alpha);
  }
};

struct ExperimentConfig {
  std::vector<int> n_values;
  std::vector<double> lambda_values;
  std::vector<double> tau_values;
  RadiusRule r_d;
  int replicates = 1;
  std::uint64_t base_seed = 0;
  std::string output_path;
};

inline void validate_experiment_config(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty() || cfg.lambda_values.empty() ||
      cfg.tau_values.empty()) {
    throw std::invalid_argument("config needs nonempty n, lambda, tau lists");
  }
  for (int n : cfg.n_values) {
    if (n < 1) throw std::invalid_argument("n values must be >= 1");
  }
  for (double l : cfg.lambda_values) {
    if (!(l >= 1.0)) throw std::invalid_argument("lambda values must be >= 1");
  }
  for (double t : cfg.tau_values) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("tau values must lie in [0, 1]");
    }
  }
  if (cfg.replicates < 1) {
    throw std::invalid_argument("replicates must be >= 1");
  }
  if (cfg.r_d.kind == RadiusRule::Kind::fixed) {
    if (!(cfg.r_d.fixed >= 0.0 && cfg.r_d.fixed <= 0.5)) {
      throw std::invalid_argument("r_d must lie in [0, 0.5]");
    }
  } else {
    if (!(cfg.r_d.c > 0.0) || !(cfg.r_d.alpha >= 0.0)) {
      throw std::invalid_argument("radius rule needs c > 0 and alpha >= 0");
    }
  }
}

/** One Monte Carlo replicate row. */
struct ExperimentRecord {
  int n = 0;
  double tau = 0.0;
  double lambda = 0.0;
  double r_s = 0.0;
  double r_d = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  double empirical_global = std::numeric_limits<double>::quiet_NaN();
  double empirical_average = 0.0;
  double limit_global = 0.0;
  double limit_average = 0.0;
  double abs_err_global = std::numeric_limits<double>::quiet_NaN();
  double abs_err_average = 0.0;
  bool undefined_global = false;
};

/** Cell skipped because r_s = lambda * r_d leaves the model's domain. */
struct SkippedCell {
  int n = 0;
  double tau = 0.0;
  double lambda = 0.0;
  double r_s = 0.0;
  double r_d = 0.0;
  std::string reason;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;  // (cell, replicate) order
  std::vector<SkippedCell> skipped;
};

namespace detail {

struct Cell {
  std::size_t index = 0;  // position in the full cell grid, feasible or not
  int n = 0;
  double tau = 0.0;
  double lambda = 0.0;
  double r_s = 0.0;
  double r_d = 0.0;
};

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

/**
 * Runs every (n, lambda, tau, replicate) cell of the grid: sample, count,
 * evaluate limits, one record each. Each replicate derives its own RNG
 * stream from (base_seed, cell, replicate), so the output is identical for
 * any thread count or execution order.
 */
inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       unsigned threads = 1) {
  validate_experiment_config(cfg);

  ExperimentResult result;
  std::vector<detail::Cell> feasible;
  std::size_t cell_index = 0;
  for (int n : cfg.n_values) {
    for (double lambda : cfg.lambda_values) {
      for (double tau : cfg.tau_values) {
        const double r_d = cfg.r_d.r_d_for(n);
        const double r_s = lambda * r_d;
        if (!(r_s > 0.0 && r_s <= 0.5)) {
          result.skipped.push_back(
              {n, tau, lambda, r_s, r_d,
               r_s > 0.5 ? "r_s = lambda * r_d exceeds 0.5" : "r_s is 0"});
        } else {
          feasible.push_back({cell_index, n, tau, lambda, r_s, r_d});
        }
        ++cell_index;
      }
    }
  }

  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
  result.records.resize(feasible.size() * reps);
  parallel_for(result.records.size(), threads, [&](std::size_t task) {
    const detail::Cell& cell = feasible[task / reps];
    const int replicate = static_cast<int>(task % reps);
    const std::uint64_t seed =
        derive_seed(cfg.base_seed, cell.index, replicate);

    const GbmParams params =
        validate_params(cell.n, cell.tau, cell.r_s, cell.r_d, seed);
    const SampledGraph graph = sample_graph(params);
    const ClusteringStats stats = compute_stats(build_adjacency(graph));

    ExperimentRecord rec;
    rec.n = cell.n;
    rec.tau = cell.tau;
    rec.lambda = cell.lambda;
    rec.r_s = cell.r_s;
    rec.r_d = cell.r_d;
    rec.replicate = replicate;
    rec.seed = seed;
    rec.limit_global = global_cc_limit(cell.r_s, cell.r_d, cell.tau);
    rec.limit_average = avg_cc_limit(cell.r_s, cell.r_d, cell.tau);
    rec.empirical_average = stats.average_cc;
    rec.abs_err_average = std::fabs(stats.average_cc - rec.limit_average);
    rec.undefined_global = !stats.global_defined;
    if (stats.global_defined) {
      rec.empirical_global = stats.global_cc;
      rec.abs_err_global = std::fabs(stats.global_cc - rec.limit_global);
    }
    result.records[task] = rec;
  });
  return result;
}

/** Per-n mean absolute errors; undefined replicates excluded and counted. */
struct ConvergenceRow {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t undefined_count = 0;
  double mean_abs_err_global = std::numeric_limits<double>::quiet_NaN();
  double mean_abs_err_average = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<ConvergenceRow> convergence_table(
    const ExperimentConfig& cfg, const ExperimentResult& result) {
  std::vector<ConvergenceRow> rows;
  for (int n : cfg.n_values) {
    ConvergenceRow row;
    row.n = n;
    detail::KahanSum err_global, err_average;
    // Records are already sorted by (cell, replicate); summation order fixed.
    for (const ExperimentRecord& rec : result.records) {
      if (rec.n != n) continue;
      if (rec.undefined_global) {
        ++row.undefined_count;
        continue;
      }
      ++row.samples;
      err_global.add(rec.abs_err_global);
      err_average.add(rec.abs_err_average);
    }
    if (row.samples > 0) {
      row.mean_abs_err_global =
          err_global.sum / static_cast<double>(row.samples);
      row.mean_abs_err_average =
          err_average.sum / static_cast<double>(row.samples);
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<ConvergenceRow> convergence_study(
    const ExperimentConfig& cfg, unsigned threads = 1) {
  return convergence_table(cfg, run_experiment(cfg, threads));
}

// ---------------------------------------------------------------------------
// Figure data
// ---------------------------------------------------------------------------

struct Fig1Row {
  double lambda = 0.0;
  double f = 0.0;
};

struct Fig2Row {
  double lambda = 0.0;
  double tau = 0.0;
  double h = 0.0;
  double g = 0.0;
};

inline std::vector<double> default_fig1_lambda_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 900; ++i) grid.push_back((100 + i) / 100.0);
  return grid;
}

inline std::vector<double> default_fig2_lambda_set() {
  return {1.5, 2.0, 5.0, 10.0, 25.0, 50.0};
}

inline std::vector<double> default_fig2_tau_grid() {
  std::vector<double> grid;
  for (int j = 1; j <= 99; ++j) grid.push_back(j / 100.0);
  return grid;
}

inline std::vector<Fig1Row> figure1_data(
    const std::vector<double>& lambda_grid = default_fig1_lambda_grid()) {
  std::vector<Fig1Row> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) rows.push_back({lambda, f_of(lambda)});
  return rows;
}

inline std::vector<Fig2Row> figure2_data(
    const std::vector<double>& lambda_set = default_fig2_lambda_set(),
    const std::vector<double>& tau_grid = default_fig2_tau_grid()) {
  std::vector<Fig2Row> rows;
  rows.reserve(lambda_set.size() * tau_grid.size());
  for (double lambda : lambda_set) {
    for (double tau : tau_grid) {
      rows.push_back({lambda, tau, h_of(lambda, tau), g_of(lambda, tau)});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV output (UTF-8, header row, 17-significant-digit floats)
// ---------------------------------------------------------------------------

inline void write_experiment_csv(std::ostream& os,
                                 const ExperimentResult& result) {
  os << "n,tau,lambda,r_s,r_d,replicate,seed,empirical_global,"
        "empirical_average,limit_global,limit_average,abs_err_global,"
        "abs_err_average,undefined\n";
  for (const ExperimentRecord& r : result.records) {
    os << r.n << ',' << to_g17(r.tau) << ',' << to_g17(r.lambda) << ','
       << to_g17(r.r_s) << ',' << to_g17(r.r_d) << ',' << r.replicate << ','
       << r.seed << ',' << to_g17(r.empirical_global) << ','
       << to_g17(r.empirical_average) << ',' << to_g17(r.limit_global) << ','
       << to_g17(r.limit_average) << ',' << to_g17(r.abs_err_global) << ','
       << to_g17(r.abs_err_average) << ',' << (r.undefined_global ? 1 : 0)
       << '\n';
  }
}

inline void write_convergence_csv(std::ostream& os,
                                  const std::vector<ConvergenceRow>& rows) {
  os << "n,samples,undefined,mean_abs_err_global,mean_abs_err_average\n";
  for (const ConvergenceRow& r : rows) {
    os << r.n << ',' << r.samples << ',' << r.undefined_count << ','
       << to_g17(r.mean_abs_err_global) << ','
       << to_g17(r.mean_abs_err_average) << '\n';
  }
}

inline void write_fig1_csv(std::ostream& os, const std::vector<Fig1Row>& rows) {
  os << "lambda,f\n";
  for (const Fig1Row& r : rows) {
    os << to_g17(r.lambda) << ',' << to_g17(r.f) << '\n';
  }
}

inline void write_fig2_csv(std::ostream& os, const std::vector<Fig2Row>& rows) {
  os << "lambda,tau,h,g\n";
  for (const Fig2Row& r : rows) {
    os << to_g17(r.lambda) << ',' << to_g17(r.tau) << ',' << to_g17(r.h) << ','
       << to_g17(r.g) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Config file: flat "key = value" lines, lists comma-separated, '#' comments
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(std::istream& is) {
  ExperimentConfig cfg;
  cfg.replicates = 0;  // force explicit
  bool have_rd = false, have_c = false, have_alpha = false;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string::npos) {
      throw std::invalid_argument(where + ": expected key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "n") {
      for (const auto& item : detail::split_list(value)) {
        cfg.n_values.push_back(
            static_cast<int>(parse_integer(item, where + " n")));
      }
    } else if (key == "lambda") {
      for (const auto& item : detail::split_list(value)) {
        cfg.lambda_values.push_back(
            parse_finite_double(item, where + " lambda"));
      }
    } else if (key == "tau") {
      for (const auto& item : detail::split_list(value)) {
        cfg.tau_values.push_back(parse_finite_double(item, where + " tau"));
      }
    } else if (key == "r_d") {
      cfg.r_d.kind = RadiusRule::Kind::fixed;
      cfg.r_d.fixed = parse_finite_double(value, where + " r_d");
      have_rd = true;
    } else if (key == "r_d_c") {
      cfg.r_d.c = parse_finite_double(value, where + " r_d_c");
      have_c = true;
    } else if (key == "r_d_alpha") {
      cfg.r_d.alpha = parse_finite_double(value, where + " r_d_alpha");
      have_alpha = true;
    } else if (key == "replicates") {
      cfg.replicates =
          static_cast<int>(parse_integer(value, where + " replicates"));
    } else if (key == "base_seed") {
      cfg.base_seed = parse_unsigned(value, where + " base_seed");
    } else if (key == "output") {
      cfg.output_path = value;
    } else {
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
  }
  if (have_rd && (have_c || have_alpha)) {
    throw std::invalid_argument(
        "config: give either r_d or the r_d_c/r_d_alpha rule, not both");
  }
  if (!have_rd) {
    if (have_c != have_alpha) {
      throw std::invalid_argument(
          "config: the radius rule needs both r_d_c and r_d_alpha");
    }
    if (have_c) cfg.r_d.kind = RadiusRule::Kind::power;
    // neither given: keep the default fixed radius
  }
  if (cfg.replicates == 0) {
    throw std::invalid_argument("config: replicates is required");
  }
  validate_experiment_config(cfg);
  return cfg;
}

}  // namespace gbmlab
