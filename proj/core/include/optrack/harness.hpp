#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "optrack/evaluation.hpp"
#include "optrack/policies.hpp"
#include "optrack/trajectory.hpp"

namespace optrack {

struct Instance {
  double mu0 = 0.5;
  double mu1 = 0.5;
};

// Full experiment grid. Every (instance, algorithm, horizon) cell is run for
// `replications` independent replications; horizons are independent fresh
// runs, not prefixes of one long run.
struct SimulationConfig {
  std::vector<Instance> instances;
  std::vector<std::uint64_t> horizons;
  std::vector<Algorithm> algorithms;
  std::uint64_t replications = 50000;
  double delta = 0.05;
  std::uint64_t master_seed = 0;
  BoundaryTimeMode boundary_time_mode = BoundaryTimeMode::ArmCount;
  double clip_exponent = 1.0 / 3.0;
};

// Throws std::invalid_argument naming the offending field.
void validate(const SimulationConfig& config);

struct AggregateMetrics {
  Instance instance;
  Algorithm algorithm = Algorithm::Uniform;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 0;
  double normalized_mse = 0.0;  // T * mean squared error
  double normalized_mse_se = 0.0;
  double mean_regret = 0.0;
  double mean_regret_se = 0.0;
  // Lower median across replications; +inf when the median run never left 1/2.
  double median_exploration_time = 0.0;
  // Fraction of replications with at least one round where a true sigma left
  // its confidence sequence.
  double cs_violation_rate = 0.0;
  double wall_time_sec = 0.0;
};

// Stream seed for one replication. Mixes every grid coordinate, including
// the horizon value, so each cell and replication gets an unrelated stream
// no matter in which order (or on which thread) it runs.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t instance_idx,
                          std::uint64_t algorithm_idx, std::uint64_t horizon,
                          std::uint64_t replication_idx);

// One full T-round interaction for the given grid coordinates. The policy
// sees only the history through the previous round. Optionally records the
// trajectory. Internal invariant breaches throw; they are never skipped.
RunMetrics run_replication(const SimulationConfig& config,
                           std::size_t instance_idx, std::size_t algorithm_idx,
                           std::uint64_t horizon, std::uint64_t replication_idx,
                           Trajectory* trajectory = nullptr);

// Whole grid. Replications run in parallel with zero shared mutable state;
// aggregation reduces per-replication scalars in replication order, so the
// output is identical at any worker count. Per-cell failures are reported on
// stderr and the grid continues.
std::vector<AggregateMetrics> run_grid(const SimulationConfig& config,
                                       unsigned workers);

// Static-partition parallel map over [0, n). workers <= 1 degenerates to a
// plain loop. The callable must be safe to run concurrently on disjoint
// indices.
void parallel_for(std::uint64_t n, unsigned workers,
                  const std::function<void(std::uint64_t)>& body);

// Time-uniform coverage experiment for the sigma confidence sequence:
// independent Bernoulli(mu) streams of the given length, each checked at
// every t for containment of the true sigma.
struct CoverageResult {
  std::uint64_t streams = 0;
  std::uint64_t violating_streams = 0;
  double violation_rate = 0.0;
};

CoverageResult stdev_coverage(double mu, double delta, std::uint64_t horizon,
                              std::uint64_t streams, std::uint64_t seed,
                              unsigned workers);

}  // namespace optrack
