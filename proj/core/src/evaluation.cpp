#include "optrack/evaluation.hpp"

#include <cmath>
#include <stdexcept>

namespace optrack {

TruthContext TruthContext::from(const Environment& env) {
  TruthContext truth;
  truth.env = env;
  truth.sigma0 = env.sigma(0);
  truth.sigma1 = env.sigma(1);
  truth.neyman = env.neyman();
  truth.sigma_gap = truth.sigma1 - truth.sigma0;
  if (env.degenerate()) {
    truth.vstar = 0.0;
    return truth;
  }
  // Evaluate V* through the same expression neyman_loss uses at
  // (pi*, true means) so the true-reward oracle's regret is exactly zero.
  truth.vstar = truth.sigma1 * truth.sigma1 / truth.neyman +
                truth.sigma0 * truth.sigma0 / (1.0 - truth.neyman);
  const double closed_form =
      (truth.sigma0 + truth.sigma1) * (truth.sigma0 + truth.sigma1);
  if (std::fabs(truth.vstar - closed_form) >
      1e-12 * std::max(1.0, closed_form)) {
    throw std::logic_error("TruthContext: V* identity violated");
  }
  return truth;
}

double neyman_loss(double pi, const RewardModel& model,
                   const TruthContext& truth) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw std::domain_error("neyman_loss: pi must lie strictly inside (0, 1)");
  }
  const double p1 = pi;
  const double p0 = 1.0 - pi;
  const double e1 = truth.env.mu1 - model.r1hat;
  const double e0 = truth.env.mu0 - model.r0hat;
  return truth.sigma1 * truth.sigma1 / p1 + (1.0 - p1) / p1 * e1 * e1 +
         truth.sigma0 * truth.sigma0 / p0 + (1.0 - p0) / p0 * e0 * e0;
}

double regret_step(double loss, const TruthContext& truth) {
  return loss - truth.vstar;
}

double a2ipw_term_variance(double pi, const RewardModel& model,
                           const TruthContext& truth) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw std::domain_error(
        "a2ipw_term_variance: pi must lie strictly inside (0, 1)");
  }
  const double e1 = truth.env.mu1 - model.r1hat;
  const double e0 = truth.env.mu0 - model.r0hat;
  const double d = e1 - e0;
  return (truth.sigma1 * truth.sigma1 + e1 * e1) / pi +
         (truth.sigma0 * truth.sigma0 + e0 * e0) / (1.0 - pi) - d * d;
}

std::optional<std::uint64_t> detect_exploration_end(
    const Trajectory& trajectory) {
  for (std::size_t i = 0; i < trajectory.rounds.size(); ++i) {
    if (std::fabs(trajectory.rounds[i].pi - 0.5) > 1e-12) {
      return i + 1;
    }
  }
  return std::nullopt;
}

double analytic_variance(std::span<const double> allocations,
                         std::span<const RewardModel> models,
                         const TruthContext& truth) {
  if (allocations.empty() || allocations.size() != models.size()) {
    throw std::domain_error(
        "analytic_variance: need equal-length nonempty sequences");
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < allocations.size(); ++t) {
    sum += a2ipw_term_variance(allocations[t], models[t], truth);
  }
  const double horizon = static_cast<double>(allocations.size());
  return sum / (horizon * horizon);
}

}  // namespace optrack
