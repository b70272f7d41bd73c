#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nestsolve/model.hpp"

namespace nestsolve {

// A sweep line f(u) = weighted_revenue - weight * u. Line k of a span carries
// label k + 1; label 0 is reserved for the constant zero line.
struct SweepLine {
  double weighted_revenue = 0.0;  // weight * revenue
  double weight = 0.0;
};

// Intersection of two lines. `hi` is the steeper line (larger weight), `lo`
// the flatter one; label 0 denotes the zero line. Before u the steeper line
// lies above the flatter one, after u below.
struct Crosspoint {
  double u = 0.0;
  std::int32_t hi = 0;
  std::int32_t lo = 0;
};

// One snapshot of the sweep: an offered subset with its aggregates and the
// coefficients of its revenue-contribution line a - b*z.
struct CandidateAssortment {
  std::vector<std::int32_t> members;  // original product indices, ascending
  double total_weight = 0.0;          // V
  double mean_revenue = 0.0;          // R
  double scaled_revenue = 0.0;        // a = V^gamma * R
  double scaled_weight = 0.0;         // b = V^gamma
};

struct CandidateSet {
  std::int32_t nest_index = 0;
  bool members_recorded = true;
  std::vector<CandidateAssortment> candidates;  // in sweep order
};

// Permutation placing products in sweep order: entry k is the original index
// of the product labeled k + 1. Sorted by weight ascending, ties by
// weight*revenue ascending, remaining ties by original position.
std::vector<std::int32_t> sweep_order(const Nest& nest);

// Top-to-bottom line order as u -> -inf: labels (n, n-1, ..., 1, 0).
std::vector<std::int32_t> initial_order(const Nest& nest);

// All pairwise crosspoints of the given lines and the zero line, sorted by
// u ascending with ties ordered by smaller label descending, then larger
// label descending. Near-equal u values are compared exactly (rational
// arithmetic on the line coefficients), so coincident intersections are
// detected and scheduled reliably. Parallel pairs emit no crosspoint.
std::vector<Crosspoint> line_crosspoints(std::span<const SweepLine> lines);

// Crosspoints of a nest's positive-weight lines, labeled per sweep_order.
// Zero-weight products coincide with the zero line and are excluded.
std::vector<Crosspoint> crosspoints(const Nest& nest);

// Maintained top-to-bottom order of lines with O(1) position lookup.
class LineOrder {
 public:
  // Starts at (line_count, ..., 2, 1, 0).
  explicit LineOrder(int line_count);

  int size() const { return static_cast<int>(order_.size()); }
  std::int32_t label_at(int position) const { return order_[position]; }
  int position_of(std::int32_t label) const { return position_[label]; }
  std::span<const std::int32_t> order() const { return order_; }

  void exchange(std::int32_t label_a, std::int32_t label_b);

 private:
  std::vector<std::int32_t> order_;     // position -> label
  std::vector<std::int32_t> position_;  // label -> position
};

// Sweeps u from -inf to +inf across all crosspoints, maintaining the offered
// prefix (top-capacity lines truncated at the zero line) with incrementally
// updated aggregates, and snapshots the prefix whenever it changes. The
// returned set contains, for every real u, a maximizer of V(S)(R(S) - u)
// over subsets of size <= capacity.
//
// With record_members = false the member lists are skipped; this is the
// memory-lean path used by the solver at scale, and candidate_members()
// reconstructs any single entry on demand. Pure function of one nest:
// calls for different nests may run concurrently.
CandidateSet generate_candidates(const Nest& nest, std::int32_t nest_index = 0,
                                 bool record_members = true);

// Original product indices of the candidate_index-th snapshot of the nest's
// sweep, recomputed by replaying the sweep. Throws std::out_of_range when the
// sweep produces fewer snapshots.
std::vector<std::int32_t> candidate_members(const Nest& nest, std::int32_t candidate_index);

}  // namespace nestsolve
