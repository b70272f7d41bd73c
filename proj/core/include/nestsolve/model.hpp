#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nestsolve {

// One product: preference weight and unit revenue. Zero-weight products are
// legal; they contribute nothing to any offer set.
struct Product {
  double weight = 0.0;
  double revenue = 0.0;
};

// A nest of products with its dissimilarity exponent in (0, 1] and the
// maximum number of products that may be offered from it. A capacity larger
// than the product count behaves like the product count.
struct Nest {
  std::vector<Product> products;
  double dissimilarity = 1.0;
  int capacity = 0;
};

// A full problem instance. All model types are plain values and every
// operation treats them as immutable, so instances can be shared across
// threads without synchronization.
struct Instance {
  std::vector<Nest> nests;
  double no_purchase_weight = 1.0;  // must be > 0
};

// Offered product subsets, one per nest, as 0-based indices into
// Nest::products.
struct Assortment {
  std::vector<std::vector<std::int32_t>> offered;
};

enum class ValidationCode {
  kEmptyInstance,
  kNonPositiveV0,
  kGammaOutOfRange,
  kNegativeWeight,
  kNegativeRevenue,
  kNegativeCapacity,
};

struct ValidationError {
  ValidationCode code;
  int nest = -1;     // 0-based location; -1 when not nest-specific
  int product = -1;  // 0-based location; -1 when not product-specific
  std::string message() const;
};

// Checks every model invariant and reports the first violation, scanning
// nests in order and products within each nest in order.
std::optional<ValidationError> validate(const Instance& instance);

struct NestAggregates {
  double total_weight = 0.0;  // sum of offered weights
  double mean_revenue = 0.0;  // weight-weighted mean revenue; 0 for an empty set
};

// Aggregates of one offered subset. The empty subset, or one with zero total
// weight, yields (0, 0). Throws std::out_of_range on a bad index.
NestAggregates nest_aggregates(const Nest& nest, std::span<const std::int32_t> subset);

// w^g with 0^g defined as 0 for g in (0, 1].
double scale_weight(double total_weight, double dissimilarity);

// Expected revenue of an assortment under the two-level nested logit model.
// Defined for any structurally valid assortment; capacity feasibility is not
// required. Throws std::out_of_range on an index or shape mismatch.
double evaluate_revenue(const Instance& instance, const Assortment& assortment);

}  // namespace nestsolve
