#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace optrack {

// Predictable per-arm mean estimates; inputs to the augmented estimator.
struct RewardModel {
  double r0hat = 0.5;
  double r1hat = 0.5;

  double at(int arm) const { return arm == 1 ? r1hat : r0hat; }
  double ate() const { return r1hat - r0hat; }
};

// Single-round augmented IPW increment
//
//   g / pi(a) * (y - rhat(a)) + (rhat(1) - rhat(0)),
//
// where g = +1 for treatment and -1 for control, pi(1) = pi and
// pi(0) = 1 - pi. Conditionally unbiased for the ATE for any predictable
// (pi, rhat).
inline double a2ipw_term(double pi, int action, double outcome,
                         const RewardModel& model) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw std::domain_error("a2ipw_term: pi must lie strictly inside (0, 1)");
  }
  const double g = action == 1 ? 1.0 : -1.0;
  const double pa = action == 1 ? pi : 1.0 - pi;
  return g / pa * (outcome - model.at(action)) + model.ate();
}

// Plain IPW increment; identical to a2ipw_term with a zero reward model.
inline double ipw_term(double pi, int action, double outcome) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw std::domain_error("ipw_term: pi must lie strictly inside (0, 1)");
  }
  const double g = action == 1 ? 1.0 : -1.0;
  const double pa = action == 1 ? pi : 1.0 - pi;
  return g / pa * outcome;
}

// Running mean of per-round estimator terms. Accumulation is
// Neumaier-compensated so the final estimate does not depend on how callers
// batch the additions.
class EstimatorState {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
    ++rounds_;
  }

  std::uint64_t rounds() const { return rounds_; }

  double finalize() const {
    if (rounds_ == 0) {
      throw std::domain_error("EstimatorState::finalize: no terms accumulated");
    }
    return (sum_ + comp_) / static_cast<double>(rounds_);
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::uint64_t rounds_ = 0;
};

}  // namespace optrack
