#include "nestsolve/solver.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "nestsolve/errors.hpp"
#include "parallel_util.hpp"

namespace nestsolve {

std::vector<BreakpointDelta> breakpoint_deltas(const Envelope& envelope, std::int32_t nest) {
  std::vector<BreakpointDelta> deltas;
  deltas.reserve(envelope.pieces.size() > 0 ? envelope.pieces.size() - 1 : 0);
  for (std::size_t k = 1; k < envelope.pieces.size(); ++k) {
    const EnvelopePiece& prev = envelope.pieces[k - 1];
    const EnvelopePiece& cur = envelope.pieces[k];
    deltas.push_back({cur.z_start, cur.scaled_revenue - prev.scaled_revenue,
                      cur.scaled_weight - prev.scaled_weight, nest});
  }
  return deltas;
}

double residual(const Instance& instance, std::span<const Envelope> envelopes, double z) {
  double value = -instance.no_purchase_weight * z;
  for (const Envelope& envelope : envelopes) {
    value += envelope_value(envelope, z).value;
  }
  return value;
}

namespace {

struct MergeEntry {
  double z;
  std::int32_t nest;
  std::int32_t piece;
};

struct MergeEntryAfter {
  bool operator()(const MergeEntry& x, const MergeEntry& y) const { return x.z > y.z; }
};

}  // namespace

Solution solve(const Instance& instance, const SolveOptions& options) {
  if (const auto error = validate(instance)) {
    throw InvalidInstanceError(error->message());
  }
  const auto nest_count = static_cast<std::int64_t>(instance.nests.size());

  Solution solution;
  const EnvelopeBuildOptions build_options{options.parallel_nests, options.threads};
  const std::vector<Envelope> envelopes =
      build_envelopes(instance, build_options, &solution.candidate_counts);
  solution.piece_counts.resize(nest_count);
  for (std::int64_t i = 0; i < nest_count; ++i) {
    solution.piece_counts[i] = static_cast<std::int32_t>(envelopes[i].pieces.size());
  }

  // Scan: start from the leftmost segment (first piece of every envelope) and
  // apply breakpoint deltas in ascending z, maximizing the revenue ratio.
  // Deltas sharing exactly one z are applied together before re-evaluating.
  double running_revenue = 0.0;
  double running_weight = instance.no_purchase_weight;
  std::priority_queue<MergeEntry, std::vector<MergeEntry>, MergeEntryAfter> merge;
  for (std::int64_t i = 0; i < nest_count; ++i) {
    const auto& pieces = envelopes[i].pieces;
    running_revenue += pieces[0].scaled_revenue;
    running_weight += pieces[0].scaled_weight;
    if (pieces.size() > 1) {
      merge.push({pieces[1].z_start, static_cast<std::int32_t>(i), 1});
    }
  }
  double best_ratio = running_revenue / running_weight;
  std::int64_t deltas_applied = 0;
  while (!merge.empty()) {
    const double batch_z = merge.top().z;
    do {
      const MergeEntry entry = merge.top();
      merge.pop();
      const auto& pieces = envelopes[entry.nest].pieces;
      const EnvelopePiece& prev = pieces[entry.piece - 1];
      const EnvelopePiece& cur = pieces[entry.piece];
      running_revenue += cur.scaled_revenue - prev.scaled_revenue;
      running_weight += cur.scaled_weight - prev.scaled_weight;
      ++deltas_applied;
      if (entry.piece + 1 < static_cast<std::int32_t>(pieces.size())) {
        merge.push({pieces[entry.piece + 1].z_start, entry.nest, entry.piece + 1});
      }
    } while (!merge.empty() && merge.top().z == batch_z);
    const double ratio = running_revenue / running_weight;
    if (ratio > best_ratio) best_ratio = ratio;
  }
  solution.z_star = best_ratio;
  solution.segments_scanned = deltas_applied;

  // Recover one optimal assortment: per nest, the candidate whose line is on
  // the envelope at z_star.
  solution.assortment.offered.resize(nest_count);
  const int threads = options.parallel_nests ? options.threads : 1;
  internal::parallel_for(nest_count, threads, [&](std::int64_t i) {
    const EnvelopeValue at_optimum = envelope_value(envelopes[i], solution.z_star);
    const std::int32_t candidate = envelopes[i].pieces[at_optimum.piece].candidate;
    solution.assortment.offered[i] = candidate_members(instance.nests[i], candidate);
  });

  solution.g_at_zstar = residual(instance, envelopes, solution.z_star);

  // Self-check: the recovered assortment must reproduce z_star.
  const double recovered = evaluate_revenue(instance, solution.assortment);
  if (std::abs(recovered - solution.z_star) >
      1e-8 * std::max(1.0, std::abs(solution.z_star))) {
    throw std::logic_error("solver self-check failed: recovered assortment revenue " +
                           std::to_string(recovered) + " != z* " +
                           std::to_string(solution.z_star));
  }
  return solution;
}

}  // namespace nestsolve
