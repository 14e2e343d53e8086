#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace optrack {

// Online sufficient statistics for one arm: sample count, running mean and
// running sum of squared deviations (Welford). The variance is the biased
// 1/N version, which is what the allocation confidence sequences consume.
struct ArmStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double outcome) {
    if (!(outcome >= 0.0 && outcome <= 1.0)) {
      throw std::domain_error("ArmStats::add: outcome outside [0, 1]");
    }
    ++count;
    const double delta = outcome - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (outcome - mean);
  }

  double variance() const {
    return count == 0 ? 0.0 : m2 / static_cast<double>(count);
  }

  double stdev() const { return std::sqrt(variance()); }
};

}  // namespace optrack
