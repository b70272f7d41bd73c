#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nestsolve/candidates.hpp"
#include "nestsolve/model.hpp"

namespace nestsolve {

// SplitMix64 (Steele, Lea, Flood 2014): the fixed, documented generator
// behind instance sampling, so generated instances reproduce bit-for-bit
// across implementations. unit_double() maps the top 53 bits onto [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Random-instance recipe. Defaults follow the standard benchmark protocol:
// weights uniform on [0.1, 10], revenues uniform on [0, 10], dissimilarity
// 0.5, unit no-purchase weight, capacity floor(n/2) with a minimum of 1.
struct GenSpec {
  int num_nests = 1;
  int products_per_nest = 1;
  std::uint64_t seed = 0;
  double weight_low = 0.1;
  double weight_high = 10.0;
  double revenue_low = 0.0;
  double revenue_high = 10.0;
  double dissimilarity = 0.5;
  double no_purchase_weight = 1.0;
  std::optional<std::vector<int>> capacities;  // explicit per-nest override
};

// Deterministic sampling from the spec: draws are nest-major, product-minor,
// weight before revenue. Throws BadSpecError on invalid parameters.
Instance generate(const GenSpec& spec);

// JSON instance files: {"v0": ..., "nests": [{"gamma": ..., "capacity": ...,
// "products": [{"v": ..., "r": ...}, ...]}, ...]}. Doubles are written with
// 17 significant digits so read(write(x)) == x exactly. read_instance
// validates the result and throws ParseError naming the offending field.
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

// Writes the reduced linear program over variables z, y1..ym:
//   minimize z
//   subject to v0*z - sum_i y_i >= 0 and, per candidate line (a, b) of nest
//   i, y_i + b*z >= a; all variables free.
// Constraint count is 1 + sum_i |T_i|. Coefficients carry 17 significant
// digits. Throws IoError when the file cannot be written.
void export_lp(const Instance& instance, std::span<const CandidateSet> candidate_sets,
               const std::filesystem::path& path);

// 17-significant-digit decimal form; parses back to exactly the same double.
std::string format_double(double value);

}  // namespace nestsolve
