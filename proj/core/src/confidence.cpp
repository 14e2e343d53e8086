#include "optrack/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optrack {

double boundary(std::uint64_t n, double delta) {
  if (n < 2) {
    throw std::domain_error("boundary: n must be >= 2");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("boundary: delta must lie in (0, 1)");
  }
  return std::log(std::log(2.0 * static_cast<double>(n))) +
         0.72 * std::log(5.2 / delta);
}

Interval stdev_cs(const ArmStats& stats, const CsParams& params) {
  return stdev_cs(stats, params, stats.count);
}

Interval stdev_cs(const ArmStats& stats, const CsParams& params,
                  std::uint64_t boundary_n) {
  if (stats.count < 2) {
    return {0.0, 0.5};
  }
  const double l = boundary(std::max<std::uint64_t>(boundary_n, 2), params.delta);
  const double root = std::sqrt(l / static_cast<double>(stats.count));
  const double sd = stats.stdev();
  return {std::max(0.0, sd - params.lower_c * root),
          std::min(0.5, sd + params.upper_c * root)};
}

Interval neyman_cs(const Interval& cs0, const Interval& cs1) {
  const double denom_lo = cs0.hi + cs1.lo;
  const double denom_hi = cs0.lo + cs1.hi;
  return {denom_lo > 0.0 ? cs1.lo / denom_lo : 0.0,
          denom_hi > 0.0 ? cs1.hi / denom_hi : 1.0};
}

}  // namespace optrack
