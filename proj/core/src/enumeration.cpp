#include "optrack/enumeration.hpp"

#include <stdexcept>
#include <vector>

#include "optrack/estimator.hpp"

namespace optrack {

namespace {

struct Leaf {
  double estimate;
  double probability;
  double cv_sum;  // sum over rounds of the conditional term variance
};

struct Enumerator {
  const Environment& env;
  const TruthContext truth;
  std::uint64_t horizon;
  std::vector<Leaf> leaves;

  void recurse(PolicyState policy, EstimatorState est, double probability,
               double cv_sum, std::uint64_t depth) {
    if (depth == horizon) {
      leaves.push_back({est.finalize(), probability, cv_sum});
      return;
    }
    const RewardModel model = policy.reward_model();
    const double pi = policy.select();
    cv_sum += a2ipw_term_variance(pi, model, truth);
    for (int action : {0, 1}) {
      const double p_action = action == 1 ? pi : 1.0 - pi;
      for (double outcome : {0.0, 1.0}) {
        const double p_outcome =
            outcome == 1.0 ? env.mean(action) : 1.0 - env.mean(action);
        const double p_branch = probability * p_action * p_outcome;
        if (p_branch == 0.0) continue;
        PolicyState next_policy = policy;
        EstimatorState next_est = est;
        next_est.add(a2ipw_term(pi, action, outcome, model));
        next_policy.observe(action, outcome);
        recurse(next_policy, next_est, p_branch, cv_sum, depth + 1);
      }
    }
  }
};

}  // namespace

EnumerationResult enumerate_exact(const Environment& env,
                                  const PolicyState& initial_policy,
                                  std::uint64_t horizon) {
  if (horizon < 1 || horizon > kMaxEnumerationHorizon) {
    throw std::domain_error(
        "enumerate_exact: horizon must lie in [1, 4] (4^T branches)");
  }
  if (env.family != OutcomeFamily::Bernoulli) {
    throw std::domain_error("enumerate_exact: Bernoulli arms only");
  }

  Enumerator en{env, TruthContext::from(env), horizon, {}};
  en.recurse(initial_policy, EstimatorState{}, 1.0, 0.0, 0);

  EnumerationResult result;
  const double ate = env.ate();
  const double t = static_cast<double>(horizon);
  for (const Leaf& leaf : en.leaves) {
    result.total_probability += leaf.probability;
    result.mean += leaf.probability * leaf.estimate;
    const double err = leaf.estimate - ate;
    result.mse += leaf.probability * err * err;
    result.variance_route += leaf.probability * leaf.cv_sum;
  }
  result.variance_route /= t * t;
  return result;
}

}  // namespace optrack
