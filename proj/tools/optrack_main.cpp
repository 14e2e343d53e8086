// Command-line front end: experiment grids, plots, coverage checks and the
// exact enumeration cross-check.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "optrack/config.hpp"
#include "optrack/csv.hpp"
#include "optrack/enumeration.hpp"
#include "optrack/harness.hpp"
#include "optrack/svg.hpp"

namespace {

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            unsigned workers, bool full_fidelity, bool dump) {
  optrack::SimulationConfig config = optrack::parse_config(config_path);
  if (full_fidelity) {
    config.replications = 500000;
  }
  if (dump) {
    std::cout << optrack::dump_config(config);
    return 0;
  }

  std::filesystem::create_directories(out_dir);
  const auto cells = optrack::run_grid(config, workers);
  if (cells.empty()) {
    std::cerr << "run: every grid cell failed\n";
    return 1;
  }
  for (const auto& cell : cells) {
    // Both regret forms: the cumulative per-round sum and the excess of the
    // normalized MSE over the optimal variance.
    const double vstar =
        optrack::TruthContext::from(
            optrack::bernoulli_env(cell.instance.mu0, cell.instance.mu1))
            .vstar;
    std::printf(
        "mu0=%-5g mu1=%-5g %-18s T=%-6llu nmse=%.6f (se %.2g) regret=%.4f "
        "nmse-V*=%.5f [%.2fs]\n",
        cell.instance.mu0, cell.instance.mu1,
        optrack::algorithm_name(cell.algorithm),
        static_cast<unsigned long long>(cell.horizon), cell.normalized_mse,
        cell.normalized_mse_se, cell.mean_regret,
        cell.normalized_mse - vstar, cell.wall_time_sec);
  }

  const auto rows = optrack::to_rows(cells);
  const std::string csv_path =
      (std::filesystem::path(out_dir) / "results.csv").string();
  optrack::write_results(rows, csv_path);
  std::cout << "wrote " << csv_path << " (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
  const auto rows = optrack::read_results(csv_path);
  const auto files = optrack::emit_plots(rows, out_dir);
  for (const auto& file : files) {
    std::cout << "wrote " << (std::filesystem::path(out_dir) / file).string()
              << "\n";
  }
  return 0;
}

int cmd_coverage(double mu, double delta, std::uint64_t horizon,
                 std::uint64_t streams, std::uint64_t seed, unsigned workers) {
  const auto result =
      optrack::stdev_coverage(mu, delta, horizon, streams, seed, workers);
  std::printf(
      "streams=%llu horizon=%llu delta=%g violating=%llu rate=%.6f -> %s\n",
      static_cast<unsigned long long>(result.streams),
      static_cast<unsigned long long>(horizon), delta,
      static_cast<unsigned long long>(result.violating_streams),
      result.violation_rate, result.violation_rate <= delta ? "OK" : "FAIL");
  return result.violation_rate <= delta ? 0 : 1;
}

int cmd_oracle_check(double mu0, double mu1, std::uint64_t horizon) {
  const optrack::Environment env = optrack::bernoulli_env(mu0, mu1);
  const double ate = env.ate();
  constexpr double kTol = 1e-12;

  const optrack::Algorithm algorithms[] = {
      optrack::Algorithm::OPTrack,
      optrack::Algorithm::ClipSMT,
      optrack::Algorithm::ClipSDT,
      optrack::Algorithm::Uniform,
      optrack::Algorithm::OracleNeymanEstReward,
      optrack::Algorithm::OracleNeymanTrueReward,
  };

  int failures = 0;
  std::printf("%-18s %-22s %-22s %-22s\n", "algorithm", "mean - ate",
              "mse (enumeration)", "|mse - analytic|");
  for (const auto algorithm : algorithms) {
    optrack::PolicyState policy(algorithm, optrack::CsParams{}, 1.0 / 3.0,
                                optrack::BoundaryTimeMode::ArmCount, &env);
    const auto result = optrack::enumerate_exact(env, policy, horizon);
    const double mean_gap = std::fabs(result.mean - ate);
    const double route_gap = std::fabs(result.mse - result.variance_route);
    const bool ok = mean_gap <= kTol && route_gap <= kTol &&
                    std::fabs(result.total_probability - 1.0) <= kTol;
    if (!ok) ++failures;
    std::printf("%-18s %-22.3e %-22.15f %-22.3e %s\n",
                optrack::algorithm_name(algorithm), result.mean - ate,
                result.mse, route_gap, ok ? "OK" : "FAIL");
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive treatment-allocation simulation toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "results", csv_path;
  unsigned workers = default_workers();
  bool full_fidelity = false, dump = false;

  auto* run = app.add_subcommand("run", "Run an experiment grid from a config");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Worker threads");
  run->add_flag("--full-fidelity", full_fidelity,
                "Use 500000 replications per cell");
  run->add_flag("--dump-config", dump,
                "Print the parsed config (with defaults) and exit");

  auto* plot = app.add_subcommand("plot", "Render SVG charts from results");
  plot->add_option("results", csv_path, "results.csv from a run")->required();
  plot->add_option("--out", out_dir, "Output directory");

  double mu = 0.5, delta = 0.05, mu0 = 0.5, mu1 = 0.5;
  std::uint64_t horizon = 10000, streams = 2000, seed = 20240501;
  auto* coverage = app.add_subcommand(
      "coverage", "Sigma confidence-sequence coverage experiment");
  coverage->add_option("mu", mu, "Bernoulli mean")->required();
  coverage->add_option("delta", delta, "Confidence level")->required();
  coverage->add_option("T", horizon, "Stream length")->required();
  coverage->add_option("streams", streams, "Independent streams")->required();
  coverage->add_option("--seed", seed, "Master seed");
  coverage->add_option("--workers", workers, "Worker threads");

  std::uint64_t check_horizon = 3;
  auto* oracle_check = app.add_subcommand(
      "oracle-check",
      "Exhaustive enumeration vs the analytic variance route (T <= 4)");
  oracle_check->add_option("mu0", mu0, "Control mean")->required();
  oracle_check->add_option("mu1", mu1, "Treatment mean")->required();
  oracle_check->add_option("T", check_horizon, "Horizon (at most 4)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_dir, workers, full_fidelity, dump);
    }
    if (plot->parsed()) {
      return cmd_plot(csv_path, out_dir);
    }
    if (coverage->parsed()) {
      return cmd_coverage(mu, delta, horizon, streams, seed, workers);
    }
    if (oracle_check->parsed()) {
      return cmd_oracle_check(mu0, mu1, check_horizon);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
