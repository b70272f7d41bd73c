#include "nestsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nestsolve/errors.hpp"

namespace nestsolve {
namespace {

constexpr double kMaxAssortments = 1e7;

// All subsets of {0..n-1} with size <= capacity, in lexicographic order of
// their ascending index sequences (the empty set first).
std::vector<std::vector<std::int32_t>> feasible_subsets(int n, int capacity) {
  std::vector<std::vector<std::int32_t>> subsets;
  std::vector<std::int32_t> current;
  const int cap = std::min(capacity, n);
  auto extend = [&](auto&& self, int start) -> void {
    subsets.push_back(current);
    if (static_cast<int>(current.size()) == cap) return;
    for (int j = start; j < n; ++j) {
      current.push_back(j);
      self(self, j + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);
  return subsets;
}

double feasible_subset_count(int n, int capacity) {
  const int cap = std::min(capacity, n);
  double total = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= cap; ++k) {
    total += binom;
    binom = binom * (n - k) / (k + 1);
    if (total > kMaxAssortments) break;
  }
  return total;
}

}  // namespace

OracleResult brute_force_solve(const Instance& instance) {
  if (const auto error = validate(instance)) {
    throw InvalidInstanceError(error->message());
  }
  double total = 1.0;
  for (const Nest& nest : instance.nests) {
    total *= feasible_subset_count(static_cast<int>(nest.products.size()), nest.capacity);
    if (total > kMaxAssortments) {
      throw TooLargeError("assortment count exceeds the 1e7 enumeration budget");
    }
  }

  const auto nest_count = instance.nests.size();
  std::vector<std::vector<std::vector<std::int32_t>>> per_nest;
  per_nest.reserve(nest_count);
  for (const Nest& nest : instance.nests) {
    per_nest.push_back(
        feasible_subsets(static_cast<int>(nest.products.size()), nest.capacity));
  }

  // Odometer over per-nest subsets in global lexicographic order; the first
  // maximizer encountered is the lexicographically smallest.
  OracleResult best;
  best.z = -1.0;
  Assortment current;
  current.offered.resize(nest_count);
  auto scan = [&](auto&& self, std::size_t nest_index) -> void {
    if (nest_index == nest_count) {
      const double value = evaluate_revenue(instance, current);
      if (value > best.z) {
        best.z = value;
        best.assortment = current;
      }
      return;
    }
    for (const auto& subset : per_nest[nest_index]) {
      current.offered[nest_index] = subset;
      self(self, nest_index + 1);
    }
  };
  scan(scan, 0);
  return best;
}

SubproblemResult brute_force_subproblem(const Nest& nest, double u) {
  const int n = static_cast<int>(nest.products.size());
  if (n > 20) {
    throw TooLargeError("subset enumeration supports at most 20 products per nest");
  }
  std::vector<double> term(n);
  for (int j = 0; j < n; ++j) {
    term[j] = nest.products[j].weight * (nest.products[j].revenue - u);
  }
  const int cap = std::min(nest.capacity, n);

  // Route 1: exhaustive subset enumeration (lexicographic, first maximizer).
  SubproblemResult best;  // empty set, value 0
  std::vector<std::int32_t> current;
  double current_value = 0.0;
  auto extend = [&](auto&& self, int start) -> void {
    if (current_value > best.value) {
      best.value = current_value;
      best.subset = current;
    }
    if (static_cast<int>(current.size()) == cap) return;
    for (int j = start; j < n; ++j) {
      current.push_back(j);
      current_value += term[j];
      self(self, j + 1);
      current_value -= term[j];
      current.pop_back();
    }
  };
  extend(extend, 0);

  // Route 2: the objective is separable, so the best subset is the largest
  // capacity-many positive terms; both routes must agree.
  std::vector<std::int32_t> by_term(n);
  std::iota(by_term.begin(), by_term.end(), 0);
  std::stable_sort(by_term.begin(), by_term.end(),
                   [&](std::int32_t x, std::int32_t y) { return term[x] > term[y]; });
  double top_k_value = 0.0;
  for (int k = 0; k < cap; ++k) {
    if (term[by_term[k]] > 0.0) top_k_value += term[by_term[k]];
  }
  if (std::abs(top_k_value - best.value) > 1e-12 * std::max(1.0, std::abs(best.value))) {
    throw std::logic_error("subproblem routes disagree: enumeration " +
                           std::to_string(best.value) + ", top-k selection " +
                           std::to_string(top_k_value));
  }
  return best;
}

}  // namespace nestsolve
