#pragma once

#include <cstdint>

#include "optrack/environment.hpp"
#include "optrack/evaluation.hpp"
#include "optrack/policies.hpp"

namespace optrack {

// Exhaustive expectation over every (action, outcome) branch of a short
// Bernoulli interaction. The real policy and estimator are advanced along
// each branch and each branch is weighted by its exact probability, giving
// two independent routes to the estimator's variance:
//   mse            -- squared error of the realized final estimates,
//   variance_route -- (1/T^2) E[sum_t conditional term variance].
// For any policy the two agree to round-off, and mean equals the true ATE.
struct EnumerationResult {
  double mean = 0.0;
  double mse = 0.0;
  double variance_route = 0.0;
  double total_probability = 0.0;  // sums to 1 up to round-off
};

inline constexpr std::uint64_t kMaxEnumerationHorizon = 4;

// Exact enumeration for horizon in [1, 4] (4^T interaction branches).
// `initial_policy` must already be wired to `env` if it is an oracle kind.
// Refuses longer horizons.
EnumerationResult enumerate_exact(const Environment& env,
                                  const PolicyState& initial_policy,
                                  std::uint64_t horizon);

}  // namespace optrack
