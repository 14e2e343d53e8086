#include <benchmark/benchmark.h>

#include "optrack/confidence.hpp"
#include "optrack/harness.hpp"
#include "optrack/random.hpp"

using namespace optrack;

namespace {

static void BM_Boundary(benchmark::State& state) {
  std::uint64_t n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary(n, 0.01));
    n = n == 100000 ? 2 : n + 1;
  }
}
BENCHMARK(BM_Boundary);

static void BM_StdevCs(benchmark::State& state) {
  ArmStats stats;
  RandomStream rng(1);
  for (int i = 0; i < 500; ++i) stats.add(rng.bernoulli(0.3) ? 1.0 : 0.0);
  const CsParams params{0.01, 1.7, 4.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(stdev_cs(stats, params));
  }
}
BENCHMARK(BM_StdevCs);

static void BM_PolicyRound(benchmark::State& state) {
  const Environment env = bernoulli_env(0.1, 0.5);
  const Algorithm kind = static_cast<Algorithm>(state.range(0));
  PolicyState policy(kind, CsParams{0.05, 1.7, 4.2}, 1.0 / 3.0,
                     BoundaryTimeMode::ArmCount, &env);
  RandomStream rng(7);
  for (auto _ : state) {
    const double pi = policy.select();
    const int action = rng.bernoulli(pi) ? 1 : 0;
    policy.observe(action, sample_outcome(env, action, rng));
    benchmark::DoNotOptimize(pi);
  }
}
BENCHMARK(BM_PolicyRound)
    ->Arg(static_cast<int>(Algorithm::OPTrack))
    ->Arg(static_cast<int>(Algorithm::ClipSDT))
    ->Arg(static_cast<int>(Algorithm::OracleNeymanTrueReward));

static void BM_Replication(benchmark::State& state) {
  SimulationConfig config;
  config.instances = {{0.1, 0.5}};
  config.algorithms = {Algorithm::OPTrack};
  config.master_seed = 11;
  const std::uint64_t horizon = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_replication(config, 0, 0, horizon, rep++).estimate);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_Replication)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
