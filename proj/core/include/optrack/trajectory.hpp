#pragma once

#include <vector>

namespace optrack {

// One interaction round as seen by the evaluator.
struct RoundRecord {
  double pi = 0.5;       // allocation P(action = 1), strictly inside (0, 1)
  int action = 0;        // 0 = control, 1 = treatment
  double outcome = 0.0;  // observed outcome in [0, 1]
  double a2ipw_term = 0.0;
  double loss = 0.0;  // Neyman loss of (pi, reward model) under the truth
};

struct Trajectory {
  std::vector<RoundRecord> rounds;
};

}  // namespace optrack
