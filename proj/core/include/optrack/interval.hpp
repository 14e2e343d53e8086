#pragma once

#include <algorithm>

namespace optrack {

// Closed real interval [lo, hi]; the carrier for all confidence-sequence
// values in this library.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
  double clamp(double x) const { return std::min(hi, std::max(lo, x)); }
};

}  // namespace optrack
