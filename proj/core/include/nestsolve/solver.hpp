#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nestsolve/envelope.hpp"
#include "nestsolve/model.hpp"

namespace nestsolve {

// Coefficient change at one envelope breakpoint, used by the merge scan.
struct BreakpointDelta {
  double z = 0.0;
  double d_scaled_revenue = 0.0;  // a_k - a_{k-1}
  double d_scaled_weight = 0.0;   // b_k - b_{k-1} (always < 0)
  std::int32_t nest = 0;
};

// The deltas of one envelope, ordered by z ascending.
std::vector<BreakpointDelta> breakpoint_deltas(const Envelope& envelope, std::int32_t nest);

// Root-finding residual -v0*z + sum_i envelope_i(z). It is strictly
// decreasing, piecewise linear and convex; its unique root is the optimal
// expected revenue.
double residual(const Instance& instance, std::span<const Envelope> envelopes, double z);

struct SolveOptions {
  bool parallel_nests = false;  // per-nest candidate/envelope work on threads
  int threads = 0;              // 0 = hardware concurrency
};

struct Solution {
  double z_star = 0.0;
  Assortment assortment;
  double g_at_zstar = 0.0;            // residual at z_star, ~0 up to rounding
  std::int64_t segments_scanned = 0;  // breakpoint deltas applied by the scan
  std::vector<std::int32_t> candidate_counts;  // candidates per nest
  std::vector<std::int32_t> piece_counts;      // envelope pieces per nest
};

// Exact solve: per-nest candidate generation and envelopes, then a single
// ascending scan over all envelope breakpoints maximizing the running
// revenue ratio, then recovery of one optimal assortment from the envelopes
// at the optimum. Throws InvalidInstanceError when validate() fails.
// Reentrant; per-nest stages run on threads when options.parallel_nests is
// set, without changing any output.
Solution solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace nestsolve
