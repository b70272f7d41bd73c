#pragma once

#include <cstdint>
#include <vector>

#include "nestsolve/model.hpp"

namespace nestsolve {

struct OracleResult {
  double z = 0.0;
  Assortment assortment;
};

// Exhaustive reference solver: maximizes evaluate_revenue over the cartesian
// product of all per-nest subsets of size <= capacity. Ties resolve to the
// lexicographically smallest assortment (nest-wise, subsets compared as
// ascending index sequences). Throws TooLargeError when the total assortment
// count exceeds 10^7. Verification path only; no pruning.
OracleResult brute_force_solve(const Instance& instance);

struct SubproblemResult {
  double value = 0.0;
  std::vector<std::int32_t> subset;
};

// Exhaustive max of sum_{j in S} w_j*(r_j - u) over subsets of size <=
// capacity. Also computed as the top-capacity positive terms and
// cross-checked against the enumeration. Throws TooLargeError when the nest
// has more than 20 products.
SubproblemResult brute_force_subproblem(const Nest& nest, double u);

}  // namespace nestsolve
