#include "nestsolve/envelope.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "nestsolve/errors.hpp"
#include "parallel_util.hpp"

namespace nestsolve {

Envelope build_envelope(const CandidateSet& candidates) {
  const auto& lines = candidates.candidates;
  if (lines.empty()) {
    throw EmptyCandidateSetError("cannot build an envelope from an empty candidate set");
  }

  std::vector<std::int32_t> by_slope(lines.size());
  std::iota(by_slope.begin(), by_slope.end(), 0);
  std::sort(by_slope.begin(), by_slope.end(), [&](std::int32_t x, std::int32_t y) {
    if (lines[x].scaled_weight != lines[y].scaled_weight) {
      return lines[x].scaled_weight > lines[y].scaled_weight;
    }
    if (lines[x].scaled_revenue != lines[y].scaled_revenue) {
      return lines[x].scaled_revenue > lines[y].scaled_revenue;
    }
    return x < y;
  });

  constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
  Envelope env;
  for (std::int32_t index : by_slope) {
    const double a = lines[index].scaled_revenue;
    const double b = lines[index].scaled_weight;
    if (!env.pieces.empty() && env.pieces.back().scaled_weight == b) {
      continue;  // parallel line dominated by the one already kept
    }
    // Pop every piece the new line reaches at that piece's start breakpoint;
    // ties pop too, so breakpoints stay strictly increasing.
    while (!env.pieces.empty()) {
      const EnvelopePiece& top = env.pieces.back();
      if (top.z_start == kMinusInf) break;  // the steepest line always wins at -inf
      if (a - b * top.z_start >= top.scaled_revenue - top.scaled_weight * top.z_start) {
        env.pieces.pop_back();
      } else {
        break;
      }
    }
    double z_start = kMinusInf;
    if (!env.pieces.empty()) {
      const EnvelopePiece& top = env.pieces.back();
      z_start = (top.scaled_revenue - a) / (top.scaled_weight - b);
    }
    env.pieces.push_back({z_start, a, b, index});
  }
  return env;
}

EnvelopeValue envelope_value(const Envelope& envelope, double z) {
  const auto& pieces = envelope.pieces;
  const auto it = std::upper_bound(
      pieces.begin(), pieces.end(), z,
      [](double value, const EnvelopePiece& piece) { return value < piece.z_start; });
  const auto index = static_cast<std::int32_t>(it - pieces.begin()) - 1;
  const EnvelopePiece& piece = pieces[index];
  return {piece.scaled_revenue - piece.scaled_weight * z, index};
}

std::vector<Envelope> build_envelopes(const Instance& instance,
                                      const EnvelopeBuildOptions& options,
                                      std::vector<std::int32_t>* candidate_counts) {
  const auto nest_count = static_cast<std::int64_t>(instance.nests.size());
  std::vector<Envelope> envelopes(nest_count);
  if (candidate_counts) candidate_counts->assign(nest_count, 0);
  const int threads = options.parallel ? options.threads : 1;
  internal::parallel_for(nest_count, threads, [&](std::int64_t i) {
    const CandidateSet candidates = generate_candidates(
        instance.nests[i], static_cast<std::int32_t>(i), /*record_members=*/false);
    if (candidate_counts) {
      (*candidate_counts)[i] = static_cast<std::int32_t>(candidates.candidates.size());
    }
    envelopes[i] = build_envelope(candidates);
  });
  return envelopes;
}

}  // namespace nestsolve
