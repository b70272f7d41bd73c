// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failures.
//
// Criteria (tolerances pinned in code):
//   1 oracle equivalence        5 size bounds
//   2 candidate sufficiency     6 scale benchmark
//   3 root property             7 LP export (external recipe)
//   4 coincident-swap schedule  8 property suite
//
// Run a subset by listing criterion numbers as arguments.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "nestsolve/envelope.hpp"
#include "nestsolve/instances.hpp"
#include "nestsolve/oracle.hpp"
#include "nestsolve/solver.hpp"

namespace {

using namespace nestsolve;
using Clock = std::chrono::steady_clock;

struct CriterionResult {
  bool pass = true;
  std::string detail;
};

double uniform(SplitMix64& rng, double low, double high) {
  return low + rng.unit_double() * (high - low);
}

int uniform_int(SplitMix64& rng, int low, int high) {
  return low + static_cast<int>(rng.next() % static_cast<std::uint64_t>(high - low + 1));
}

// The randomized family for criteria 1, 3, 5 and 8: m in {1,2,3}, n in
// {1..5}, per-nest dissimilarity from {0.3, 0.7, 1.0}, per-nest capacity
// uniform on {0..n}, weights U[0.1, 10], revenues U[0, 10], v0 = 1.
std::vector<Instance> small_random_instances(int count) {
  SplitMix64 rng(20240811);
  std::vector<Instance> instances;
  instances.reserve(count);
  static constexpr double kGammas[] = {0.3, 0.7, 1.0};
  for (int k = 0; k < count; ++k) {
    Instance instance;
    instance.no_purchase_weight = 1.0;
    const int m = uniform_int(rng, 1, 3);
    const int n = uniform_int(rng, 1, 5);
    for (int i = 0; i < m; ++i) {
      Nest nest;
      nest.dissimilarity = kGammas[rng.next() % 3];
      nest.capacity = uniform_int(rng, 0, n);
      for (int j = 0; j < n; ++j) {
        nest.products.push_back({uniform(rng, 0.1, 10.0), uniform(rng, 0.0, 10.0)});
      }
      instance.nests.push_back(std::move(nest));
    }
    instances.push_back(std::move(instance));
  }
  return instances;
}

std::vector<Instance> large_instances() {
  std::vector<Instance> instances;
  for (int k = 0; k < 20; ++k) {
    GenSpec spec;
    spec.num_nests = 1000;
    spec.products_per_nest = 20;
    spec.seed = 100 + static_cast<std::uint64_t>(k);
    instances.push_back(generate(spec));
  }
  return instances;
}

bool within_rel(double value, double expected, double tolerance) {
  return std::abs(value - expected) <= tolerance * std::max(1e-12, std::abs(expected));
}

// 1. Over >= 200 random small instances, z* matches the brute-force oracle
// and the returned assortment reproduces z*, both to 1e-8 relative.
CriterionResult criterion_oracle_equivalence() {
  const auto instances = small_random_instances(250);
  double worst_gap = 0.0;
  int checked = 0;
  for (const auto& instance : instances) {
    const auto expected = brute_force_solve(instance);
    const auto solution = solve(instance);
    const double scale = std::max(1e-12, std::abs(expected.z));
    worst_gap = std::max(worst_gap, std::abs(solution.z_star - expected.z) / scale);
    if (!within_rel(solution.z_star, expected.z, 1e-8)) {
      return {false, "z* mismatch vs oracle: " + std::to_string(solution.z_star) + " vs " +
                         std::to_string(expected.z)};
    }
    const double recovered = evaluate_revenue(instance, solution.assortment);
    if (!within_rel(recovered, solution.z_star, 1e-8)) {
      return {false, "recovered assortment revenue drifts from z*"};
    }
    ++checked;
  }
  std::ostringstream detail;
  detail << checked << "/250 instances within 1e-8 (worst rel gap " << std::scientific
         << worst_gap << ")";
  return {true, detail.str()};
}

// 2. Over >= 100 random nests with n <= 6 and 1000 grid values of u, the
// candidate set attains the subproblem optimum to 1e-9 relative.
CriterionResult criterion_candidate_sufficiency() {
  SplitMix64 rng(5150);
  double worst = 0.0;
  const int nest_count = 120;
  for (int k = 0; k < nest_count; ++k) {
    Nest nest;
    nest.dissimilarity = 1.0;
    const int n = uniform_int(rng, 1, 6);
    nest.capacity = uniform_int(rng, 0, n);
    for (int j = 0; j < n; ++j) {
      nest.products.push_back({uniform(rng, 0.1, 10.0), uniform(rng, 0.0, 10.0)});
    }
    const auto candidates = generate_candidates(nest);

    double r_low = std::numeric_limits<double>::infinity(), r_high = 0.0;
    for (const auto& product : nest.products) {
      r_low = std::min(r_low, product.revenue);
      r_high = std::max(r_high, product.revenue);
    }
    for (int g = 0; g < 1000; ++g) {
      const double u = (r_low - 1.0) + g * ((r_high + 1.0) - (r_low - 1.0)) / 999.0;
      double from_candidates = -std::numeric_limits<double>::infinity();
      for (const auto& candidate : candidates.candidates) {
        from_candidates = std::max(
            from_candidates, candidate.total_weight * (candidate.mean_revenue - u));
      }
      const double from_oracle = brute_force_subproblem(nest, u).value;
      const double gap =
          std::abs(from_candidates - from_oracle) / std::max(1.0, std::abs(from_oracle));
      worst = std::max(worst, gap);
      if (gap > 1e-9) {
        std::ostringstream detail;
        detail << "sufficiency gap " << std::scientific << gap << " at u = " << u;
        return {false, detail.str()};
      }
    }
  }
  std::ostringstream detail;
  detail << nest_count << " nests x 1000 grid points within 1e-9 (worst gap " << std::scientific
         << worst << ")";
  return {true, detail.str()};
}

// 3. On every criterion-1 instance plus 20 instances at m=1000, n=20:
// |G(z*)| <= 1e-8 * max(1, v0 z*) and G changes sign strictly at distance
// 0.01 * (1 + |z*|).
CriterionResult criterion_root_property() {
  auto instances = small_random_instances(250);
  auto big = large_instances();
  std::move(big.begin(), big.end(), std::back_inserter(instances));

  double worst_residual = 0.0;
  for (const auto& instance : instances) {
    const auto solution = solve(instance);
    const auto envelopes = build_envelopes(instance);
    const double at_root = residual(instance, envelopes, solution.z_star);
    const double scale =
        std::max(1.0, instance.no_purchase_weight * std::abs(solution.z_star));
    worst_residual = std::max(worst_residual, std::abs(at_root) / scale);
    if (std::abs(at_root) > 1e-8 * scale) {
      return {false, "residual at z* too large: " + std::to_string(at_root)};
    }
    const double delta = 0.01 * (1.0 + std::abs(solution.z_star));
    if (!(residual(instance, envelopes, solution.z_star - delta) > 0.0)) {
      return {false, "residual not positive left of z*"};
    }
    if (!(residual(instance, envelopes, solution.z_star + delta) < 0.0)) {
      return {false, "residual not negative right of z*"};
    }
  }
  std::ostringstream detail;
  detail << instances.size() << " instances (incl. 20 at m=1000, n=20), worst scaled residual "
         << std::scientific << worst_residual;
  return {true, detail.str()};
}

// 4. The five-line coincident configuration reproduces the documented
// maintained orders and swap schedule exactly.
CriterionResult criterion_swap_schedule() {
  const std::vector<SweepLine> lines = {
      {2.5, 1.0}, {4.25, 0.5}, {5.0, 2.0}, {3.5, 3.0}, {6.0, 4.0}};
  const auto points = line_crosspoints(lines);

  std::vector<std::pair<std::int32_t, std::int32_t>> schedule;
  for (const auto& point : points) {
    if (point.u == 0.5) {
      schedule.emplace_back(std::min(point.hi, point.lo), std::max(point.hi, point.lo));
    }
  }
  const std::vector<std::pair<std::int32_t, std::int32_t>> expected_schedule = {
      {3, 5}, {2, 5}, {2, 3}, {1, 4}};
  if (schedule != expected_schedule) {
    std::ostringstream detail;
    detail << "swap schedule differs: got";
    for (auto [lo, hi] : schedule) detail << " (" << lo << "," << hi << ")";
    return {false, detail.str()};
  }

  LineOrder order(5);
  std::vector<std::int32_t> before, after;
  for (const auto& point : points) {
    if (point.u == 0.5 && before.empty()) {
      before.assign(order.order().begin(), order.order().end());
    }
    if (point.u > 0.5) break;
    if (order.position_of(point.hi) > order.position_of(point.lo)) continue;
    order.exchange(point.hi, point.lo);
  }
  after.assign(order.order().begin(), order.order().end());

  const std::vector<std::int32_t> expected_before = {5, 3, 2, 4, 1, 0};
  const std::vector<std::int32_t> expected_after = {2, 3, 5, 1, 4, 0};
  if (before != expected_before) return {false, "order before the batch differs"};
  if (after != expected_after) return {false, "order after the batch differs"};
  return {true, "orders (5,3,2,4,1) -> (2,3,5,1,4) via swaps (3,5),(2,5),(2,3),(1,4), exact"};
}

// 5. |T_i| <= n(n+1)/2 + 1 on every tested nest and scan segments <=
// sum_i (|T_i| - 1) on every solved instance. Exact bounds.
CriterionResult criterion_size_bounds() {
  auto instances = small_random_instances(250);
  auto big = large_instances();
  std::move(big.begin(), big.end(), std::back_inserter(instances));

  std::int64_t nests_checked = 0;
  for (const auto& instance : instances) {
    const auto solution = solve(instance);
    std::int64_t budget = 0;
    for (std::size_t i = 0; i < instance.nests.size(); ++i) {
      const auto n = static_cast<std::int64_t>(instance.nests[i].products.size());
      if (solution.candidate_counts[i] > n * (n + 1) / 2 + 1) {
        return {false, "candidate count " + std::to_string(solution.candidate_counts[i]) +
                           " exceeds the n(n+1)/2 + 1 bound for n = " + std::to_string(n)};
      }
      budget += solution.candidate_counts[i] - 1;
      ++nests_checked;
    }
    if (solution.segments_scanned > budget) {
      return {false, "scan visited " + std::to_string(solution.segments_scanned) +
                         " segments, budget " + std::to_string(budget)};
    }
  }
  return {true, std::to_string(nests_checked) + " nests within n(n+1)/2 + 1; scans within "
                "sum(|T_i| - 1)"};
}

// 6. m=100000, n=20 solves within 60 s and doubling m scales the mean time
// by a factor in [1.3, 3.2].
CriterionResult criterion_scale_benchmark() {
  auto timed_mean = [](int m, int trials) {
    double total = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      GenSpec spec;
      spec.num_nests = m;
      spec.products_per_nest = 20;
      spec.seed = 2024 + static_cast<std::uint64_t>(trial);
      const auto instance = generate(spec);
      const auto start = Clock::now();
      const auto solution = solve(instance);
      total += std::chrono::duration<double>(Clock::now() - start).count();
      if (solution.z_star <= 0.0) return -1.0;
    }
    return total / trials;
  };

  const double base_mean = timed_mean(100000, 3);
  if (base_mean < 0.0) return {false, "non-positive optimum at m=100000"};
  if (base_mean > 60.0) {
    return {false, "m=100000, n=20 took " + std::to_string(base_mean) + " s (> 60 s)"};
  }
  const double doubled_mean = timed_mean(200000, 3);
  if (doubled_mean < 0.0) return {false, "non-positive optimum at m=200000"};
  const double ratio = doubled_mean / base_mean;
  std::ostringstream detail;
  detail.precision(3);
  detail << "m=1e5 mean " << base_mean << " s (<= 60 s); m=2e5/m=1e5 ratio " << ratio;
  if (ratio < 1.3 || ratio > 3.2) {
    return {false, detail.str() + " outside [1.3, 3.2]"};
  }
  detail << " in [1.3, 3.2]";
  return {true, detail.str()};
}

// 7. LP export: five small instances produce well-formed files with exactly
// 1 + sum|T_i| constraints. Solving them with an external LP solver is the
// documented recipe (tools/lp_crosscheck.py, optional ctest `lp_crosscheck`),
// not a gate here.
CriterionResult criterion_lp_export() {
  SplitMix64 rng(424242);
  for (int k = 0; k < 5; ++k) {
    GenSpec spec;
    spec.num_nests = uniform_int(rng, 1, 4);
    spec.products_per_nest = uniform_int(rng, 1, 6);
    spec.seed = 900 + static_cast<std::uint64_t>(k);
    const auto instance = generate(spec);

    std::vector<CandidateSet> sets;
    std::size_t expected_rows = 1;
    for (std::size_t i = 0; i < instance.nests.size(); ++i) {
      sets.push_back(generate_candidates(instance.nests[i], static_cast<std::int32_t>(i),
                                         /*record_members=*/false));
      expected_rows += sets.back().candidates.size();
    }
    const auto path = std::filesystem::temp_directory_path() /
                      ("nestsolve_accept_" + std::to_string(::getpid()) + "_" +
                       std::to_string(k) + ".lp");
    export_lp(instance, sets, path);
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::filesystem::remove(path);
    const std::string text = buffer.str();
    std::size_t rows = 0;
    for (std::size_t pos = text.find(" >= "); pos != std::string::npos;
         pos = text.find(" >= ", pos + 1)) {
      ++rows;
    }
    if (rows != expected_rows) {
      return {false, "LP row count " + std::to_string(rows) + " != 1 + sum|T_i| = " +
                         std::to_string(expected_rows)};
    }
  }
  return {true, "5 exports with 1 + sum|T_i| rows; external solve: tools/lp_crosscheck.py"};
}

// 8. Property suite: revenue scaling, capacity monotonicity, envelope
// convexity/continuity, file round-trip identity, generation determinism.
CriterionResult criterion_properties() {
  SplitMix64 rng(31415);
  const auto instances = small_random_instances(60);

  for (const auto& instance : instances) {
    const auto base = solve(instance);
    for (const double alpha : {2.0, 3.7}) {
      Instance scaled = instance;
      for (auto& nest : scaled.nests) {
        for (auto& product : nest.products) product.revenue *= alpha;
      }
      const double scaled_z = solve(scaled).z_star;
      if (std::abs(scaled_z - alpha * base.z_star) >
          1e-9 * std::max(1.0, alpha * base.z_star)) {
        return {false, "revenue scaling equivariance violated"};
      }
    }

    Instance grown = instance;
    auto& nest = grown.nests[rng.next() % grown.nests.size()];
    nest.capacity += 1;
    if (solve(grown).z_star < base.z_star - 1e-10 * std::max(1.0, base.z_star)) {
      return {false, "capacity monotonicity violated"};
    }
  }

  for (const auto& instance : instances) {
    for (std::size_t i = 0; i < instance.nests.size(); ++i) {
      const auto candidates =
          generate_candidates(instance.nests[i], static_cast<std::int32_t>(i));
      const auto envelope = build_envelope(candidates);
      for (std::size_t k = 1; k < envelope.pieces.size(); ++k) {
        if (!(envelope.pieces[k].z_start > envelope.pieces[k - 1].z_start) ||
            !(envelope.pieces[k].scaled_weight < envelope.pieces[k - 1].scaled_weight)) {
          return {false, "envelope not strictly convex"};
        }
        const double z = envelope.pieces[k].z_start;
        const double left =
            envelope.pieces[k - 1].scaled_revenue - envelope.pieces[k - 1].scaled_weight * z;
        const double right =
            envelope.pieces[k].scaled_revenue - envelope.pieces[k].scaled_weight * z;
        if (std::abs(left - right) > 1e-10 * std::max(1.0, std::abs(left))) {
          return {false, "envelope discontinuous at a breakpoint"};
        }
      }
    }
  }

  for (int k = 0; k < 10; ++k) {
    GenSpec spec;
    spec.num_nests = uniform_int(rng, 1, 5);
    spec.products_per_nest = uniform_int(rng, 1, 6);
    spec.seed = 7000 + static_cast<std::uint64_t>(k);
    const auto instance = generate(spec);
    const auto again = generate(spec);
    for (std::size_t i = 0; i < instance.nests.size(); ++i) {
      for (std::size_t j = 0; j < instance.nests[i].products.size(); ++j) {
        if (instance.nests[i].products[j].weight != again.nests[i].products[j].weight ||
            instance.nests[i].products[j].revenue != again.nests[i].products[j].revenue) {
          return {false, "generation not deterministic"};
        }
      }
    }

    const auto path = std::filesystem::temp_directory_path() /
                      ("nestsolve_accept_rt_" + std::to_string(::getpid()) + "_" +
                       std::to_string(k) + ".json");
    write_instance(instance, path);
    const auto reread = read_instance(path);
    std::filesystem::remove(path);
    if (reread.no_purchase_weight != instance.no_purchase_weight ||
        reread.nests.size() != instance.nests.size()) {
      return {false, "file round-trip changed the instance"};
    }
    for (std::size_t i = 0; i < instance.nests.size(); ++i) {
      if (reread.nests[i].dissimilarity != instance.nests[i].dissimilarity ||
          reread.nests[i].capacity != instance.nests[i].capacity) {
        return {false, "file round-trip changed a nest"};
      }
      for (std::size_t j = 0; j < instance.nests[i].products.size(); ++j) {
        if (reread.nests[i].products[j].weight != instance.nests[i].products[j].weight ||
            reread.nests[i].products[j].revenue != instance.nests[i].products[j].revenue) {
          return {false, "file round-trip changed a product"};
        }
      }
    }
  }

  return {true, "scaling equivariance, capacity monotonicity, envelope shape, round-trip "
                "identity, deterministic generation"};
}

struct Criterion {
  int number;
  const char* name;
  CriterionResult (*run)();
};

const Criterion kCriteria[] = {
    {1, "oracle equivalence", criterion_oracle_equivalence},
    {2, "candidate sufficiency", criterion_candidate_sufficiency},
    {3, "root property", criterion_root_property},
    {4, "coincident swap schedule", criterion_swap_schedule},
    {5, "size bounds", criterion_size_bounds},
    {6, "scale benchmark", criterion_scale_benchmark},
    {7, "LP export", criterion_lp_export},
    {8, "property suite", criterion_properties},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.number) == selected.end()) {
      continue;
    }
    const auto start = Clock::now();
    CriterionResult result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("[%s] %d. %s — %s (%.1f s)\n", result.pass ? "PASS" : "FAIL",
                criterion.number, criterion.name, result.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures;
}
