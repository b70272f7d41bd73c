#include "nestsolve/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace nestsolve {
namespace {

namespace mp = boost::multiprecision;

constexpr SweepLine kZeroLine{0.0, 0.0};

const SweepLine& line_of(std::span<const SweepLine> lines, std::int32_t label) {
  return label == 0 ? kZeroLine : lines[label - 1];
}

// Exact sign of u(c1) - u(c2) where u = (a_hi - a_lo) / (b_hi - b_lo), both
// denominators positive. The coefficients are exact doubles, so rational
// arithmetic settles orderings that double rounding hides; coincident
// intersections must compare equal or the swap schedule around them breaks.
int exact_u_compare(std::span<const SweepLine> lines, const Crosspoint& c1, const Crosspoint& c2) {
  const SweepLine& h1 = line_of(lines, c1.hi);
  const SweepLine& l1 = line_of(lines, c1.lo);
  const SweepLine& h2 = line_of(lines, c2.hi);
  const SweepLine& l2 = line_of(lines, c2.lo);
  const mp::cpp_rational num1 =
      mp::cpp_rational(h1.weighted_revenue) - mp::cpp_rational(l1.weighted_revenue);
  const mp::cpp_rational den1 = mp::cpp_rational(h1.weight) - mp::cpp_rational(l1.weight);
  const mp::cpp_rational num2 =
      mp::cpp_rational(h2.weighted_revenue) - mp::cpp_rational(l2.weighted_revenue);
  const mp::cpp_rational den2 = mp::cpp_rational(h2.weight) - mp::cpp_rational(l2.weight);
  const mp::cpp_rational lhs = num1 * den2;
  const mp::cpp_rational rhs = num2 * den1;
  if (lhs < rhs) return -1;
  if (rhs < lhs) return 1;
  return 0;
}

// u values carry at most ~3 ulp of relative error (two exact-rounded
// subtractions and one division), so orderings separated by more than this
// margin are trustworthy as doubles.
bool clearly_ordered(double u1, double u2) {
  const double margin =
      8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(u1), std::abs(u2));
  return std::abs(u1 - u2) > margin;
}

void sort_crosspoints(std::span<const SweepLine> lines, std::vector<Crosspoint>& points) {
  std::sort(points.begin(), points.end(), [&](const Crosspoint& c1, const Crosspoint& c2) {
    if (clearly_ordered(c1.u, c2.u)) return c1.u < c2.u;
    const int sign = exact_u_compare(lines, c1, c2);
    if (sign != 0) return sign < 0;
    // Tie rule: smaller label descending, then larger label descending.
    const std::int32_t min1 = std::min(c1.hi, c1.lo), max1 = std::max(c1.hi, c1.lo);
    const std::int32_t min2 = std::min(c2.hi, c2.lo), max2 = std::max(c2.hi, c2.lo);
    if (min1 != min2) return min1 > min2;
    return max1 > max2;
  });
}

std::vector<Crosspoint> labeled_crosspoints(std::span<const SweepLine> lines) {
  const int count = static_cast<int>(lines.size());
  std::vector<Crosspoint> points;
  points.reserve(static_cast<std::size_t>(count) * (count + 1) / 2);
  for (int x = 0; x < count; ++x) {
    for (int y = x + 1; y < count; ++y) {
      const SweepLine& lx = lines[x];
      const SweepLine& ly = lines[y];
      if (lx.weight == ly.weight) continue;  // parallel
      const bool x_steeper = lx.weight > ly.weight;
      const SweepLine& hi = x_steeper ? lx : ly;
      const SweepLine& lo = x_steeper ? ly : lx;
      const double u =
          (hi.weighted_revenue - lo.weighted_revenue) / (hi.weight - lo.weight);
      if (!std::isfinite(u)) continue;  // effectively parallel at double range
      points.push_back({u, x_steeper ? x + 1 : y + 1, x_steeper ? y + 1 : x + 1});
    }
  }
  for (int x = 0; x < count; ++x) {
    if (lines[x].weight == 0.0) continue;  // coincides with the zero line
    const double u = lines[x].weighted_revenue / lines[x].weight;
    if (!std::isfinite(u)) continue;
    points.push_back({u, x + 1, 0});
  }
  sort_crosspoints(lines, points);
  return points;
}

struct NestLines {
  std::vector<std::int32_t> order;        // sweep_order permutation
  std::vector<SweepLine> lines;           // positive-weight lines, label k+1
  std::vector<std::int32_t> original;     // line label-1 -> original product index
};

NestLines build_nest_lines(const Nest& nest) {
  NestLines out;
  out.order = sweep_order(nest);
  out.lines.reserve(out.order.size());
  out.original.reserve(out.order.size());
  for (std::int32_t original_index : out.order) {
    const Product& p = nest.products[original_index];
    if (p.weight > 0.0) {
      out.lines.push_back({p.weight * p.revenue, p.weight});
      out.original.push_back(original_index);
    }
  }
  return out;
}

// Core of the sweep shared by generation and replay. on_snapshot receives the
// offered prefix as line labels plus the running weight/weighted-revenue
// sums; returning false stops the sweep.
void sweep(std::span<const SweepLine> lines, int capacity,
           const std::function<bool(std::span<const std::int32_t>, double, double)>& on_snapshot) {
  const std::vector<Crosspoint> points = labeled_crosspoints(lines);
  LineOrder order(static_cast<int>(lines.size()));

  double weight_sum = 0.0;
  double revenue_sum = 0.0;
  int offered = std::min(capacity, order.position_of(0));
  for (int p = 0; p < offered; ++p) {
    const SweepLine& ln = lines[order.label_at(p) - 1];
    weight_sum += ln.weight;
    revenue_sum += ln.weighted_revenue;
  }
  if (!on_snapshot(order.order().first(offered), weight_sum, revenue_sum)) return;

  for (const Crosspoint& cp : points) {
    const int hi_pos = order.position_of(cp.hi);
    const int lo_pos = order.position_of(cp.lo);
    // A coincident batch can exchange a pair as a side effect of reordering
    // its other members; such a crosspoint is already resolved.
    if (hi_pos > lo_pos) continue;
    const bool straddles = hi_pos < offered && offered <= lo_pos;
    if (straddles) {
      const SweepLine& out_line = line_of(lines, cp.hi);
      const SweepLine& in_line = line_of(lines, cp.lo);
      weight_sum -= out_line.weight;
      revenue_sum -= out_line.weighted_revenue;
      weight_sum += in_line.weight;
      revenue_sum += in_line.weighted_revenue;
    }
    order.exchange(cp.hi, cp.lo);

    const int new_offered = std::min(capacity, order.position_of(0));
    const bool changed = straddles || new_offered != offered;
    while (offered > new_offered) {
      --offered;
      const std::int32_t label = order.label_at(offered);
      if (label != 0) {
        weight_sum -= lines[label - 1].weight;
        revenue_sum -= lines[label - 1].weighted_revenue;
      }
    }
    while (offered < new_offered) {
      const std::int32_t label = order.label_at(offered);
      if (label != 0) {
        weight_sum += lines[label - 1].weight;
        revenue_sum += lines[label - 1].weighted_revenue;
      }
      ++offered;
    }
    if (offered == 0) {
      // The offered set is exactly empty; clear accumulated drift.
      weight_sum = 0.0;
      revenue_sum = 0.0;
    }
    if (changed && !on_snapshot(order.order().first(offered), weight_sum, revenue_sum)) {
      return;
    }
  }
}

std::vector<std::int32_t> to_original_sorted(std::span<const std::int32_t> labels,
                                             const std::vector<std::int32_t>& original) {
  std::vector<std::int32_t> members;
  members.reserve(labels.size());
  for (std::int32_t label : labels) members.push_back(original[label - 1]);
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

std::vector<std::int32_t> sweep_order(const Nest& nest) {
  std::vector<std::int32_t> order(nest.products.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t x, std::int32_t y) {
    const Product& px = nest.products[x];
    const Product& py = nest.products[y];
    if (px.weight != py.weight) return px.weight < py.weight;
    return px.weight * px.revenue < py.weight * py.revenue;
  });
  return order;
}

std::vector<std::int32_t> initial_order(const Nest& nest) {
  std::vector<std::int32_t> order(nest.products.size() + 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    order[k] = static_cast<std::int32_t>(nest.products.size() - k);
  }
  return order;
}

std::vector<Crosspoint> line_crosspoints(std::span<const SweepLine> lines) {
  return labeled_crosspoints(lines);
}

std::vector<Crosspoint> crosspoints(const Nest& nest) {
  const NestLines nl = build_nest_lines(nest);
  std::vector<Crosspoint> points = labeled_crosspoints(nl.lines);
  // Positive-weight products occupy the highest labels of the full sweep
  // order (zero-weight ones sort first), so shift labels accordingly.
  const auto offset =
      static_cast<std::int32_t>(nest.products.size() - nl.lines.size());
  if (offset > 0) {
    for (Crosspoint& cp : points) {
      if (cp.hi != 0) cp.hi += offset;
      if (cp.lo != 0) cp.lo += offset;
    }
  }
  return points;
}

LineOrder::LineOrder(int line_count)
    : order_(line_count + 1), position_(line_count + 1) {
  for (int p = 0; p <= line_count; ++p) {
    order_[p] = line_count - p;
    position_[line_count - p] = p;
  }
}

void LineOrder::exchange(std::int32_t label_a, std::int32_t label_b) {
  const std::int32_t pa = position_[label_a];
  const std::int32_t pb = position_[label_b];
  order_[pa] = label_b;
  order_[pb] = label_a;
  position_[label_a] = pb;
  position_[label_b] = pa;
}

CandidateSet generate_candidates(const Nest& nest, std::int32_t nest_index,
                                 bool record_members) {
  const NestLines nl = build_nest_lines(nest);
  const double dissimilarity = nest.dissimilarity;

  CandidateSet out;
  out.nest_index = nest_index;
  out.members_recorded = record_members;
  sweep(nl.lines, nest.capacity,
        [&](std::span<const std::int32_t> labels, double weight_sum, double revenue_sum) {
          CandidateAssortment candidate;
          if (weight_sum > 0.0) {
            candidate.total_weight = weight_sum;
            candidate.mean_revenue = revenue_sum / weight_sum;
            candidate.scaled_weight = std::pow(weight_sum, dissimilarity);
            candidate.scaled_revenue = candidate.scaled_weight * candidate.mean_revenue;
          }
          if (record_members) {
            candidate.members = to_original_sorted(labels, nl.original);
          }
          out.candidates.push_back(std::move(candidate));
          return true;
        });
  return out;
}

std::vector<std::int32_t> candidate_members(const Nest& nest, std::int32_t candidate_index) {
  const NestLines nl = build_nest_lines(nest);
  std::vector<std::int32_t> members;
  std::int32_t seen = -1;
  bool found = false;
  sweep(nl.lines, nest.capacity,
        [&](std::span<const std::int32_t> labels, double, double) {
          if (++seen == candidate_index) {
            members = to_original_sorted(labels, nl.original);
            found = true;
            return false;
          }
          return true;
        });
  if (!found) {
    throw std::out_of_range("candidate index " + std::to_string(candidate_index) +
                            " beyond sweep snapshot count");
  }
  return members;
}

}  // namespace nestsolve
