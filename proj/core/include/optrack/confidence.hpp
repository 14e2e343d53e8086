#pragma once
/*
Time-uniform confidence sequences for arm standard deviations and for the
variance-minimizing (Neyman) allocation.

For a [0,1]-valued stream with n >= 2 observations and empirical standard
deviation sd_n, the sigma CS is the asymmetric interval

  [ sd_n - 1.7 sqrt(l(n, delta) / n),  sd_n + 4.2 sqrt(l(n, delta) / n) ],

with the iterated-logarithm boundary

  l(n, delta) = ln ln(2n) + 0.72 ln(5.2 / delta)      (natural logs).

The pair of per-arm sigma intervals [L0, U0], [L1, U1] induces an interval
for pi* = sigma1 / (sigma0 + sigma1):

  [ L1 / (U0 + L1),  U1 / (L0 + U1) ].

Widths shrink as O(sqrt(ln ln n / n)); both endpoints are clamped into
[0, 1/2], the sigma range of a [0,1]-valued variable.
*/

#include <cstdint>

#include "optrack/arm_stats.hpp"
#include "optrack/interval.hpp"

namespace optrack {

// Confidence-sequence parameters. The 1.7 / 4.2 multipliers come from the
// underlying empirical-Bernstein bound; configurable only for ablations.
struct CsParams {
  double delta = 0.05;
  double lower_c = 1.7;
  double upper_c = 4.2;
};

// l(n, delta) above. Strictly increasing in n (n >= 2), strictly decreasing
// in delta. Throws for n < 2 or delta outside (0, 1); callers that can see
// n < 2 must clamp explicitly.
double boundary(std::uint64_t n, double delta);

// Sigma CS for one arm, boundary evaluated at the arm's own count. Fewer
// than two observations yield the vacuous [0, 0.5].
Interval stdev_cs(const ArmStats& stats, const CsParams& params);

// Same, but with the boundary evaluated at `boundary_n` (e.g. the total
// number of completed rounds) while the width divisor stays at the arm
// count. boundary_n is clamped up to 2.
Interval stdev_cs(const ArmStats& stats, const CsParams& params,
                  std::uint64_t boundary_n);

// Interval image of (s0, s1) -> s1 / (s0 + s1) over a pair of sigma
// intervals. A zero denominator resolves to the vacuous endpoint (0 below,
// 1 above).
Interval neyman_cs(const Interval& cs0, const Interval& cs1);

}  // namespace optrack
