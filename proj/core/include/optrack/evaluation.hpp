#pragma once
/*
Environment-aware metrics.

The per-round Neyman loss of an allocation pi and reward model r is

  l(pi, r) = sum_a [ sigma_a^2 / pi(a) + ((1 - pi(a)) / pi(a)) eps(a)^2 ],

with eps(a) = mu_a - r(a), pi(1) = pi, pi(0) = 1 - pi. Its minimum over
(pi, r) is the optimal normalized variance V* = (sigma0 + sigma1)^2, attained
at the Neyman allocation with the true means. Cumulative regret sums
l(pi_t, r_t) - V* over rounds.

The exact conditional variance of one estimator increment under fixed
(pi, r) is

  sum_a (sigma_a^2 + eps(a)^2) / pi(a) - (eps(1) - eps(0))^2
    = l(pi, r) + 2 eps(1) eps(0),

and per-round increments are martingale differences, so the variance of the
final estimate is the (1/T^2)-scaled sum of per-round conditional variances.
*/

#include <cstdint>
#include <optional>
#include <span>

#include "optrack/environment.hpp"
#include "optrack/estimator.hpp"
#include "optrack/trajectory.hpp"

namespace optrack {

// Ground-truth quantities shared by every metric.
struct TruthContext {
  Environment env;
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  double vstar = 0.0;      // optimal normalized variance (sigma0 + sigma1)^2
  double neyman = 0.5;     // pi*
  double sigma_gap = 0.0;  // sigma1 - sigma0

  static TruthContext from(const Environment& env);
};

// l(pi, r) above. Throws for pi outside (0, 1).
double neyman_loss(double pi, const RewardModel& model,
                   const TruthContext& truth);

// loss - V*. Nonnegative on every round when the reward error is zero.
double regret_step(double loss, const TruthContext& truth);

// Exact conditional variance of one a2ipw increment under fixed (pi, model).
double a2ipw_term_variance(double pi, const RewardModel& model,
                           const TruthContext& truth);

// First round (1-based) whose allocation differs from 1/2 by more than
// 1e-12; nullopt if the run never left 1/2.
std::optional<std::uint64_t> detect_exploration_end(
    const Trajectory& trajectory);

// Variance of the final estimate under deterministic (non-adaptive)
// allocation and reward-model sequences:
//   (1/T^2) sum_t a2ipw_term_variance(pi_t, model_t).
// Callers must not pass sequences produced by an adaptive policy.
double analytic_variance(std::span<const double> allocations,
                         std::span<const RewardModel> models,
                         const TruthContext& truth);

// Per-replication outcome summary.
struct RunMetrics {
  double estimate = 0.0;
  double sq_error = 0.0;
  double cum_regret = 0.0;
  std::optional<std::uint64_t> exploration_time;
  std::uint64_t cs_violations = 0;
};

}  // namespace optrack
