#pragma once

#include <cmath>
#include <stdexcept>

namespace optrack {

enum class OutcomeFamily { Bernoulli };

// Two-arm outcome generator with known means. Arm 0 is control, arm 1 is
// treatment; all outcomes live in [0, 1], so arm standard deviations are at
// most 1/2.
struct Environment {
  double mu0 = 0.5;
  double mu1 = 0.5;
  OutcomeFamily family = OutcomeFamily::Bernoulli;

  double mean(int arm) const { return arm == 1 ? mu1 : mu0; }

  double sigma(int arm) const {
    const double m = mean(arm);
    return std::sqrt(m * (1.0 - m));
  }

  double ate() const { return mu1 - mu0; }

  bool degenerate() const { return sigma(0) == 0.0 && sigma(1) == 0.0; }

  // Variance-minimizing allocation sigma1 / (sigma0 + sigma1). When both arms
  // are deterministic every allocation is optimal; 1/2 by convention.
  double neyman() const {
    const double s = sigma(0) + sigma(1);
    return s > 0.0 ? sigma(1) / s : 0.5;
  }
};

inline Environment bernoulli_env(double mu0, double mu1) {
  if (!(mu0 >= 0.0 && mu0 <= 1.0) || !(mu1 >= 0.0 && mu1 <= 1.0)) {
    throw std::domain_error("bernoulli_env: arm means must lie in [0, 1]");
  }
  return Environment{mu0, mu1, OutcomeFamily::Bernoulli};
}

}  // namespace optrack
