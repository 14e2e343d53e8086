// Acceptance suite: one pass/fail line per criterion.
//
// Usage: acceptance_suite [--workers N] [criterion ...]
// With no criterion arguments, all nine run in order. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "optrack/config.hpp"
#include "optrack/csv.hpp"
#include "optrack/enumeration.hpp"
#include "optrack/harness.hpp"

using namespace optrack;

namespace {

unsigned g_workers = 2;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v, const char* spec = "%.5g") {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, v);
  return buffer;
}

SimulationConfig base_config() {
  SimulationConfig config;
  config.delta = 0.05;
  config.clip_exponent = 1.0 / 3.0;
  config.boundary_time_mode = BoundaryTimeMode::ArmCount;
  return config;
}

// Mean of per-replication estimates and its standard error.
struct EstimateSummary {
  double mean = 0.0;
  double se = 0.0;
};

EstimateSummary replicate_estimates(const SimulationConfig& config,
                                    std::uint64_t horizon,
                                    std::uint64_t reps) {
  std::vector<double> estimates(reps);
  parallel_for(reps, g_workers, [&](std::uint64_t r) {
    estimates[r] = run_replication(config, 0, 0, horizon, r).estimate;
  });
  EstimateSummary summary;
  for (double e : estimates) summary.mean += e;
  summary.mean /= static_cast<double>(reps);
  double ss = 0.0;
  for (double e : estimates) ss += (e - summary.mean) * (e - summary.mean);
  summary.se = std::sqrt(ss / static_cast<double>(reps - 1) /
                         static_cast<double>(reps));
  return summary;
}

// --- criterion 1: enumeration vs the analytic variance route ---------------
Outcome criterion_1() {
  Outcome out;
  constexpr double kTol = 1e-12;
  const Algorithm algorithms[] = {
      Algorithm::OPTrack,       Algorithm::ClipSMT,
      Algorithm::ClipSDT,       Algorithm::Uniform,
      Algorithm::OracleNeymanEstReward, Algorithm::OracleNeymanTrueReward};
  double worst_mean = 0.0, worst_route = 0.0;
  for (auto [mu0, mu1] : {std::pair{0.3, 0.5}, {0.7, 0.2}}) {
    const Environment env = bernoulli_env(mu0, mu1);
    for (Algorithm algorithm : algorithms) {
      for (std::uint64_t horizon : {3ull, 4ull}) {
        PolicyState policy(algorithm, CsParams{0.05, 1.7, 4.2}, 1.0 / 3.0,
                           BoundaryTimeMode::ArmCount, &env);
        const EnumerationResult r = enumerate_exact(env, policy, horizon);
        worst_mean = std::max(worst_mean, std::fabs(r.mean - env.ate()));
        worst_route = std::max(worst_route, std::fabs(r.mse - r.variance_route));
        out.require(std::fabs(r.mean - env.ate()) <= kTol,
                    std::string(algorithm_name(algorithm)) + " mean off");
        out.require(std::fabs(r.mse - r.variance_route) <= kTol,
                    std::string(algorithm_name(algorithm)) + " route gap");
        out.require(std::fabs(r.total_probability - 1.0) <= kTol,
                    "branch probabilities do not sum to 1");
      }
    }
  }
  out.note("max |mean-ate| " + fmt(worst_mean) + ", max route gap " +
           fmt(worst_route));
  return out;
}

// --- criterion 2: closed-form baseline for the true-reward oracle ----------
Outcome criterion_2() {
  Outcome out;
  SimulationConfig config = base_config();
  config.instances = {{0.1, 0.5}};
  config.algorithms = {Algorithm::OracleNeymanTrueReward};
  config.horizons = {400};
  config.replications = 50000;
  config.master_seed = 1001;
  const auto cells = run_grid(config, g_workers);
  const double vstar = TruthContext::from(bernoulli_env(0.1, 0.5)).vstar;
  const double gap = std::fabs(cells.at(0).normalized_mse - vstar);
  out.require(gap <= 3.0 * cells.at(0).normalized_mse_se,
              "normalized MSE " + fmt(cells.at(0).normalized_mse) +
                  " not within 3 SE of " + fmt(vstar));
  out.note("nmse " + fmt(cells.at(0).normalized_mse) + " vs V* " + fmt(vstar) +
           " (se " + fmt(cells.at(0).normalized_mse_se) + ")");
  return out;
}

// --- criterion 3: unbiasedness of the full adaptive pipeline ---------------
Outcome criterion_3() {
  Outcome out;
  SimulationConfig config = base_config();
  config.instances = {{0.3, 0.5}};
  config.algorithms = {Algorithm::OPTrack};
  config.master_seed = 3003;
  const EstimateSummary s = replicate_estimates(config, 500, 10000);
  const double gap = std::fabs(s.mean - 0.2);
  out.require(gap <= 4.0 * s.se, "mean estimate " + fmt(s.mean, "%.6f") +
                                     " further than 4 SE from 0.2");
  out.note("mean " + fmt(s.mean, "%.6f") + ", |bias| " + fmt(gap) + ", se " +
           fmt(s.se));
  return out;
}

// --- criterion 4: sigma confidence-sequence coverage -----------------------
Outcome criterion_4() {
  Outcome out;
  const CoverageResult r = stdev_coverage(0.5, 0.05, 10000, 2000, 7070,
                                          g_workers);
  out.require(r.violation_rate <= 0.05,
              "violation rate " + fmt(r.violation_rate) + " above delta");
  out.note(std::to_string(r.violating_streams) + "/2000 streams violated (rate " +
           fmt(r.violation_rate) + ")");
  return out;
}

// --- criterion 5: small-horizon advantage over clipped tracking ------------
Outcome criterion_5() {
  Outcome out;
  SimulationConfig config = base_config();
  config.instances = {{0.2, 0.5}, {0.1, 0.5}, {0.05, 0.5}};
  config.algorithms = {Algorithm::OPTrack, Algorithm::ClipSDT};
  config.horizons = {100, 200, 500};
  config.replications = 50000;
  config.master_seed = 5555;
  const auto cells = run_grid(config, g_workers);

  auto lookup = [&](std::size_t instance, Algorithm algorithm,
                    std::uint64_t horizon) -> const AggregateMetrics& {
    for (const auto& cell : cells) {
      if (cell.instance.mu0 == config.instances[instance].mu0 &&
          cell.algorithm == algorithm && cell.horizon == horizon) {
        return cell;
      }
    }
    throw std::logic_error("criterion 5: missing cell");
  };

  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    for (std::uint64_t horizon : config.horizons) {
      const double opt = lookup(i, Algorithm::OPTrack, horizon).normalized_mse;
      const double sdt = lookup(i, Algorithm::ClipSDT, horizon).normalized_mse;
      out.require(opt <= sdt, "mu0=" + fmt(config.instances[i].mu0) + " T=" +
                                  std::to_string(horizon) + ": optrack " +
                                  fmt(opt) + " > clip_sdt " + fmt(sdt));
      if (horizon == 100) {
        const double improvement = (sdt - opt) / sdt;
        out.require(improvement >= 0.05,
                    "mu0=" + fmt(config.instances[i].mu0) +
                        " T=100 improvement " + fmt(improvement) + " < 5%");
        out.note("mu0=" + fmt(config.instances[i].mu0) + " T=100: " +
                 fmt(100.0 * improvement, "%.1f") + "% better");
      }
    }
  }
  return out;
}

// --- criterion 6: optimism on every covered round ---------------------------
Outcome criterion_6() {
  Outcome out;
  SimulationConfig config = base_config();
  config.algorithms = {Algorithm::OPTrack};
  config.master_seed = 6006;
  const double mu0s[] = {0.5, 0.4, 0.3, 0.2, 0.1, 0.05};
  const std::uint64_t horizon = 1000;
  const std::uint64_t reps = 1000;

  std::uint64_t total_violating_runs = 0;
  for (double mu0 : mu0s) {
    config.instances = {{mu0, 0.5}};
    const double pi_star = bernoulli_env(mu0, 0.5).neyman();
    const double slack = std::fabs(0.5 - pi_star) + 1e-12;
    std::vector<char> optimistic(reps, 1);
    std::vector<char> violated(reps, 0);
    parallel_for(reps, g_workers, [&](std::uint64_t r) {
      Trajectory trajectory;
      const RunMetrics m =
          run_replication(config, 0, 0, horizon, r, &trajectory);
      if (m.cs_violations > 0) {
        violated[r] = 1;
        return;
      }
      for (const RoundRecord& round : trajectory.rounds) {
        if (std::fabs(0.5 - round.pi) > slack) {
          optimistic[r] = 0;
          return;
        }
      }
    });
    std::uint64_t bad = 0, skipped = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
      skipped += violated[r];
      bad += violated[r] ? 0 : (optimistic[r] ? 0 : 1);
    }
    total_violating_runs += skipped;
    out.require(bad == 0, "mu0=" + fmt(mu0) + ": " + std::to_string(bad) +
                              " covered trajectories broke optimism");
  }
  out.note("6000 trajectories checked, " +
           std::to_string(total_violating_runs) + " skipped for CS violations");
  return out;
}

// --- criterion 7: exploration time shrinks with the sigma gap ---------------
Outcome criterion_7() {
  Outcome out;
  SimulationConfig config = base_config();
  config.algorithms = {Algorithm::OPTrack};
  config.master_seed = 7007;
  const double mu0s[] = {0.4, 0.3, 0.2, 0.1, 0.05};  // sigma gap ascending
  const std::uint64_t horizon = 5000;
  const std::uint64_t reps = 1000;

  std::vector<double> medians;
  std::string shown;
  for (double mu0 : mu0s) {
    config.instances = {{mu0, 0.5}};
    std::vector<double> times(reps);
    parallel_for(reps, g_workers, [&](std::uint64_t r) {
      const RunMetrics m = run_replication(config, 0, 0, horizon, r);
      times[r] = m.exploration_time
                     ? static_cast<double>(*m.exploration_time)
                     : std::numeric_limits<double>::infinity();
    });
    std::sort(times.begin(), times.end());
    const double median = times[(reps - 1) / 2];
    medians.push_back(median);
    if (!shown.empty()) shown += ", ";
    shown += "mu0=" + fmt(mu0) + ": " +
             (std::isinf(median) ? std::string("inf") : fmt(median, "%.0f"));
  }
  for (std::size_t i = 1; i < medians.size(); ++i) {
    out.require(medians[i] <= medians[i - 1],
                "median exploration time increased with the sigma gap");
  }
  out.note(shown);
  return out;
}

// --- criterion 8: per-round regret decreases with the horizon ---------------
Outcome criterion_8() {
  Outcome out;
  SimulationConfig config = base_config();
  config.instances = {{0.3, 0.5}, {0.2, 0.5}};
  config.algorithms = {Algorithm::OPTrack};
  config.horizons = {500, 1000, 2000};
  config.replications = 5000;
  config.master_seed = 8008;
  const auto cells = run_grid(config, g_workers);

  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    std::vector<double> per_round;
    std::string shown = "mu0=" + fmt(config.instances[i].mu0) + ":";
    for (std::uint64_t horizon : config.horizons) {
      for (const auto& cell : cells) {
        if (cell.instance.mu0 == config.instances[i].mu0 &&
            cell.horizon == horizon) {
          per_round.push_back(cell.mean_regret /
                              static_cast<double>(horizon));
          shown += " " + fmt(per_round.back(), "%.5f");
        }
      }
    }
    for (std::size_t k = 1; k < per_round.size(); ++k) {
      out.require(per_round[k] < per_round[k - 1],
                  "regret per round not strictly decreasing for mu0=" +
                      fmt(config.instances[i].mu0));
    }
    out.note(shown);
  }
  return out;
}

// --- criterion 9: byte-identical goldens at any worker count ----------------
Outcome criterion_9() {
  Outcome out;
  const std::string golden_dir = OPTRACK_GOLDEN_DIR;
  const SimulationConfig config = parse_config(golden_dir + "/tiny_grid.conf");

  std::string first;
  for (unsigned workers : {1u, 2u, 5u}) {
    const std::string csv = results_csv_string(to_rows(run_grid(config, workers)));
    if (first.empty()) {
      first = csv;
    } else {
      out.require(csv == first, "worker count " + std::to_string(workers) +
                                    " changed the output bytes");
    }
  }

  std::ifstream golden(golden_dir + "/tiny_grid_results.csv", std::ios::binary);
  out.require(static_cast<bool>(golden), "golden CSV missing");
  if (golden) {
    std::stringstream ss;
    ss << golden.rdbuf();
    out.require(ss.str() == first, "output differs from the committed golden");
  }
  out.note(std::to_string(first.size()) + " bytes, workers {1,2,5} identical");
  return out;
}

struct Criterion {
  int id;
  const char* label;
  double runtime_limit_sec;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  {
    const unsigned hw = std::thread::hardware_concurrency();
    g_workers = hw == 0 ? 1 : hw;
  }
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
      g_workers = static_cast<unsigned>(std::atoi(argv[++i]));
    } else {
      selected.push_back(std::atoi(argv[i]));
    }
  }

  const Criterion criteria[] = {
      {1, "exact-oracle variance (enumeration vs analytic, T <= 4)", 1.0,
       criterion_1},
      {2, "true-reward oracle attains V* = (sigma0+sigma1)^2 at T=400", 30.0,
       criterion_2},
      {3, "unbiasedness of optrack at T=500 (10k replications)", 60.0,
       criterion_3},
      {4, "sigma CS coverage over 2000 streams of length 10000", 60.0,
       criterion_4},
      {5, "optrack vs clip_sdt normalized MSE at small horizons", 900.0,
       criterion_5},
      {6, "optimism bound on every covered optrack round", 0.0, criterion_6},
      {7, "median exploration time nonincreasing in the sigma gap", 0.0,
       criterion_7},
      {8, "mean regret per round strictly decreasing in T", 0.0, criterion_8},
      {9, "byte-identical golden grid at any worker count", 0.0, criterion_9},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) ==
            selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.runtime_limit_sec > 0.0 &&
        elapsed > criterion.runtime_limit_sec) {
      outcome.pass = false;
      outcome.detail += "; runtime " + fmt(elapsed, "%.1f") + "s over limit " +
                        fmt(criterion.runtime_limit_sec, "%.0f") + "s";
    }
    std::printf("criterion %d: %s — %s [%.1fs] %s\n", criterion.id,
                outcome.pass ? "PASS" : "FAIL", criterion.label, elapsed,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
