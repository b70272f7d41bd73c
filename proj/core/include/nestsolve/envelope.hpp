#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nestsolve/candidates.hpp"

namespace nestsolve {

// One linear piece of an upper envelope: value a - b*z for z >= z_start (the
// first piece starts at -infinity). `candidate` points back into the
// CandidateSet the envelope was built from.
struct EnvelopePiece {
  double z_start = 0.0;
  double scaled_revenue = 0.0;  // a
  double scaled_weight = 0.0;   // b
  std::int32_t candidate = 0;
};

// Piecewise-linear convex decreasing upper envelope of candidate lines.
// z_start is strictly increasing and scaled_weight strictly decreasing
// across pieces.
struct Envelope {
  std::vector<EnvelopePiece> pieces;
};

// Builds the pointwise max of all candidate lines by the monotone stack
// procedure: lines sorted by slope, parallel-dominated lines dropped, then
// each line pops every piece it dominates at that piece's start breakpoint
// (ties pop, keeping envelopes minimal). Throws EmptyCandidateSetError when
// `candidates` is empty.
Envelope build_envelope(const CandidateSet& candidates);

struct EnvelopeValue {
  double value = 0.0;
  std::int32_t piece = 0;  // active piece; a breakpoint belongs to the right piece
};

// Evaluates the envelope at z by binary search over piece start coordinates.
EnvelopeValue envelope_value(const Envelope& envelope, double z);

struct EnvelopeBuildOptions {
  bool parallel = false;  // build nests on multiple threads
  int threads = 0;        // 0 = hardware concurrency
};

// Envelope of every nest (candidates generated without member lists and
// discarded). When candidate_counts is non-null it receives the per-nest
// candidate count.
std::vector<Envelope> build_envelopes(const Instance& instance,
                                      const EnvelopeBuildOptions& options = {},
                                      std::vector<std::int32_t>* candidate_counts = nullptr);

}  // namespace nestsolve
