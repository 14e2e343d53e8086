#include "optrack/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "optrack/random.hpp"

namespace optrack {

void validate(const SimulationConfig& config) {
  if (config.instances.empty()) {
    throw std::invalid_argument("config: instances must be nonempty");
  }
  for (const Instance& inst : config.instances) {
    if (!(inst.mu0 >= 0.0 && inst.mu0 <= 1.0) ||
        !(inst.mu1 >= 0.0 && inst.mu1 <= 1.0)) {
      throw std::invalid_argument("config: instances must have means in [0, 1]");
    }
  }
  if (config.horizons.empty()) {
    throw std::invalid_argument("config: horizons must be nonempty");
  }
  for (std::uint64_t t : config.horizons) {
    if (t < 1) throw std::invalid_argument("config: horizons must be >= 1");
  }
  if (!std::is_sorted(config.horizons.begin(), config.horizons.end())) {
    throw std::invalid_argument("config: horizons must be sorted ascending");
  }
  if (config.algorithms.empty()) {
    throw std::invalid_argument("config: algorithms must be nonempty");
  }
  for (Algorithm algorithm : config.algorithms) {
    if (algorithm == Algorithm::ClipOGD) {
      throw std::invalid_argument(
          "config: algorithms: clip_ogd is reserved but not implemented");
    }
  }
  if (config.replications < 1) {
    throw std::invalid_argument("config: replications must be >= 1");
  }
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("config: delta must lie in (0, 1)");
  }
  if (!(config.clip_exponent > 0.0)) {
    throw std::invalid_argument("config: clip_exponent must be positive");
  }
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t instance_idx,
                          std::uint64_t algorithm_idx, std::uint64_t horizon,
                          std::uint64_t replication_idx) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ mix64(instance_idx + 0x01));
  h = mix64(h ^ mix64(algorithm_idx + 0x100));
  h = mix64(h ^ mix64(horizon + 0x10000));
  h = mix64(h ^ mix64(replication_idx + 0x1000000));
  return h;
}

RunMetrics run_replication(const SimulationConfig& config,
                           std::size_t instance_idx, std::size_t algorithm_idx,
                           std::uint64_t horizon, std::uint64_t replication_idx,
                           Trajectory* trajectory) {
  const Instance& inst = config.instances.at(instance_idx);
  const Environment env = bernoulli_env(inst.mu0, inst.mu1);
  const TruthContext truth = TruthContext::from(env);
  const Algorithm kind = config.algorithms.at(algorithm_idx);

  PolicyState policy(kind, CsParams{config.delta, 1.7, 4.2},
                     config.clip_exponent, config.boundary_time_mode, &env);
  RandomStream rng(derive_seed(config.master_seed, instance_idx, algorithm_idx,
                               horizon, replication_idx));
  EstimatorState est;
  RunMetrics metrics;
  double cum_regret = 0.0;
  if (trajectory) trajectory->rounds.reserve(horizon);

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const RewardModel model = policy.reward_model();
    const double pi = policy.select();
    if (!(pi > 0.0 && pi < 1.0)) {
      throw std::logic_error("run_replication: allocation left (0, 1)");
    }
    if (!policy.sigma_cs(0).contains(truth.sigma0) ||
        !policy.sigma_cs(1).contains(truth.sigma1)) {
      ++metrics.cs_violations;
    }
    if (!metrics.exploration_time && std::fabs(pi - 0.5) > 1e-12) {
      metrics.exploration_time = t;
    }
    const int action = rng.bernoulli(pi) ? 1 : 0;
    const double outcome = sample_outcome(env, action, rng);
    const double term = a2ipw_term(pi, action, outcome, model);
    est.add(term);
    const double loss = neyman_loss(pi, model, truth);
    cum_regret += regret_step(loss, truth);
    if (trajectory) {
      trajectory->rounds.push_back({pi, action, outcome, term, loss});
    }
    policy.observe(action, outcome);
  }

  metrics.estimate = est.finalize();
  const double err = metrics.estimate - truth.env.ate();
  metrics.sq_error = err * err;
  metrics.cum_regret = cum_regret;
  return metrics;
}

void parallel_for(std::uint64_t n, unsigned workers,
                  const std::function<void(std::uint64_t)>& body) {
  if (n == 0) return;
  const unsigned count =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(workers, 1u), n));
  if (count == 1) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    threads.emplace_back([&, w] {
      const std::uint64_t begin = n * w / count;
      const std::uint64_t end = n * (w + 1) / count;
      try {
        for (std::uint64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) thread.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double standard_error(const std::vector<double>& values, double mean) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
}

// Lower median, so an infinite sentinel never mixes with a finite value.
double lower_median(std::vector<double> values) {
  const std::size_t k = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + k, values.end());
  return values[k];
}

}  // namespace

std::vector<AggregateMetrics> run_grid(const SimulationConfig& config,
                                       unsigned workers) {
  validate(config);
  std::vector<AggregateMetrics> grid;
  grid.reserve(config.instances.size() * config.algorithms.size() *
               config.horizons.size());

  const std::uint64_t reps = config.replications;
  std::vector<double> sq_error(reps), regret(reps), exploration(reps),
      violated(reps);

  for (std::size_t ii = 0; ii < config.instances.size(); ++ii) {
    for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
      for (std::uint64_t horizon : config.horizons) {
        const auto start = std::chrono::steady_clock::now();
        try {
          parallel_for(reps, workers, [&](std::uint64_t r) {
            const RunMetrics m =
                run_replication(config, ii, ai, horizon, r);
            sq_error[r] = m.sq_error;
            regret[r] = m.cum_regret;
            exploration[r] =
                m.exploration_time
                    ? static_cast<double>(*m.exploration_time)
                    : std::numeric_limits<double>::infinity();
            violated[r] = m.cs_violations > 0 ? 1.0 : 0.0;
          });

          AggregateMetrics cell;
          cell.instance = config.instances[ii];
          cell.algorithm = config.algorithms[ai];
          cell.horizon = horizon;
          cell.replications = reps;
          const double t = static_cast<double>(horizon);
          const double mse = mean_of(sq_error);
          cell.normalized_mse = t * mse;
          cell.normalized_mse_se = t * standard_error(sq_error, mse);
          cell.mean_regret = mean_of(regret);
          cell.mean_regret_se = standard_error(regret, cell.mean_regret);
          cell.median_exploration_time = lower_median(exploration);
          cell.cs_violation_rate = mean_of(violated);
          cell.wall_time_sec =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
          grid.push_back(cell);
        } catch (const std::exception& e) {
          std::cerr << "run_grid: cell (mu0=" << config.instances[ii].mu0
                    << ", mu1=" << config.instances[ii].mu1 << ", "
                    << algorithm_name(config.algorithms[ai])
                    << ", T=" << horizon << ") failed: " << e.what() << '\n';
        }
      }
    }
  }
  return grid;
}

CoverageResult stdev_coverage(double mu, double delta, std::uint64_t horizon,
                              std::uint64_t streams, std::uint64_t seed,
                              unsigned workers) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::domain_error("stdev_coverage: mu must lie in [0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("stdev_coverage: delta must lie in (0, 1)");
  }
  const double sigma = std::sqrt(mu * (1.0 - mu));
  const CsParams params{delta, 1.7, 4.2};

  std::vector<char> violated(streams, 0);
  parallel_for(streams, workers, [&](std::uint64_t s) {
    RandomStream rng(derive_seed(seed, s, 0, horizon, 0));
    ArmStats stats;
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      stats.add(rng.bernoulli(mu) ? 1.0 : 0.0);
      if (t < 2) continue;
      if (!stdev_cs(stats, params).contains(sigma)) {
        violated[s] = 1;
        break;
      }
    }
  });

  CoverageResult result;
  result.streams = streams;
  for (char v : violated) result.violating_streams += v;
  result.violation_rate = streams == 0
                              ? 0.0
                              : static_cast<double>(result.violating_streams) /
                                    static_cast<double>(streams);
  return result;
}

}  // namespace optrack
