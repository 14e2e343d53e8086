#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "optrack/arm_stats.hpp"
#include "optrack/confidence.hpp"
#include "optrack/environment.hpp"
#include "optrack/estimator.hpp"
#include "optrack/interval.hpp"

namespace optrack {

enum class Algorithm {
  OPTrack,
  ClipSMT,
  ClipSDT,
  Uniform,
  OracleNeymanEstReward,
  OracleNeymanTrueReward,
  // Reserved slot; no shipped implementation and no config name.
  ClipOGD,
};

std::optional<Algorithm> algorithm_from_name(const std::string& name);
const char* algorithm_name(Algorithm algorithm);

// Whether the iterated-logarithm boundary is evaluated at the arm's own
// sample count or at the total number of completed rounds.
enum class BoundaryTimeMode { ArmCount, TotalTime };

// Floor keeping every allocation strictly inside (0, 1) under round-off, so
// the importance weight 1 / pi(a) stays finite.
inline constexpr double kAllocationFloor = 1e-6;

// Point of the interval closest to 1/2.
double optimistic_choice(const Interval& cs);

// Clipped allocation: project pihat into [c_t, 1 - c_t] with
// c_t = min(1/2, t^-exponent).
double clip_allocation(double pihat, std::uint64_t round, double exponent);

// Mutable per-run allocation-rule state, advanced one round at a time via
// select() / observe(). Oracle kinds hold a pointer to the true environment;
// the other kinds never read it.
class PolicyState {
 public:
  PolicyState(Algorithm kind, CsParams params, double clip_exponent,
              BoundaryTimeMode boundary_mode,
              const Environment* oracle_env = nullptr);

  Algorithm kind() const { return kind_; }
  std::uint64_t round() const { return round_; }
  const ArmStats& stats(int arm) const { return arm == 1 ? stats1_ : stats0_; }

  // Predictable reward estimate built from rounds 1..t-1: the arm's sample
  // mean (midpoint 1/2 before any data), or the true means for the
  // true-reward oracle.
  RewardModel reward_model() const;

  // Allocation for the current round, strictly inside (0, 1). Also refreshes
  // sigma_cs() for both arms.
  double select();

  // Per-arm sigma confidence sequences as of the last select() call. Each is
  // run at delta / 5 so the five-way union bound behind the allocation CS
  // holds at the configured delta.
  const Interval& sigma_cs(int arm) const { return arm == 1 ? cs1_ : cs0_; }

  // Record the observed (action, outcome) and advance to round t + 1.
  void observe(int action, double outcome);

 private:
  double select_optrack() const;
  double select_clip() const;

  Algorithm kind_;
  CsParams params_;
  double clip_exponent_;
  BoundaryTimeMode boundary_mode_;
  const Environment* truth_;
  ArmStats stats0_;
  ArmStats stats1_;
  Interval cs0_{0.0, 0.5};
  Interval cs1_{0.0, 0.5};
  std::uint64_t round_ = 1;
};

}  // namespace optrack
