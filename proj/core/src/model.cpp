#include "nestsolve/model.hpp"

#include <cmath>
#include <stdexcept>

namespace nestsolve {

std::string ValidationError::message() const {
  auto at = [this] {
    std::string loc;
    if (nest >= 0) loc += " (nest " + std::to_string(nest);
    if (product >= 0) loc += ", product " + std::to_string(product);
    if (nest >= 0) loc += ")";
    return loc;
  };
  switch (code) {
    case ValidationCode::kEmptyInstance:
      return "instance must contain at least one nest";
    case ValidationCode::kNonPositiveV0:
      return "no-purchase weight must be a finite value > 0";
    case ValidationCode::kGammaOutOfRange:
      return "dissimilarity must lie in (0, 1]" + at();
    case ValidationCode::kNegativeWeight:
      return "product weight must be a finite value >= 0" + at();
    case ValidationCode::kNegativeRevenue:
      return "product revenue must be a finite value >= 0" + at();
    case ValidationCode::kNegativeCapacity:
      return "capacity must be >= 0" + at();
  }
  return "invalid instance";
}

std::optional<ValidationError> validate(const Instance& instance) {
  if (instance.nests.empty()) {
    return ValidationError{ValidationCode::kEmptyInstance};
  }
  if (!std::isfinite(instance.no_purchase_weight) || instance.no_purchase_weight <= 0.0) {
    return ValidationError{ValidationCode::kNonPositiveV0};
  }
  for (int i = 0; i < static_cast<int>(instance.nests.size()); ++i) {
    const Nest& nest = instance.nests[i];
    if (!(nest.dissimilarity > 0.0) || !(nest.dissimilarity <= 1.0)) {
      return ValidationError{ValidationCode::kGammaOutOfRange, i};
    }
    if (nest.capacity < 0) {
      return ValidationError{ValidationCode::kNegativeCapacity, i};
    }
    for (int j = 0; j < static_cast<int>(nest.products.size()); ++j) {
      const Product& p = nest.products[j];
      if (!std::isfinite(p.weight) || !(p.weight >= 0.0)) {
        return ValidationError{ValidationCode::kNegativeWeight, i, j};
      }
      if (!std::isfinite(p.revenue) || !(p.revenue >= 0.0)) {
        return ValidationError{ValidationCode::kNegativeRevenue, i, j};
      }
    }
  }
  return std::nullopt;
}

NestAggregates nest_aggregates(const Nest& nest, std::span<const std::int32_t> subset) {
  const auto n = static_cast<std::int32_t>(nest.products.size());
  double total_weight = 0.0;
  double weighted_revenue = 0.0;
  for (std::int32_t j : subset) {
    if (j < 0 || j >= n) {
      throw std::out_of_range("product index " + std::to_string(j) + " out of range [0, " +
                              std::to_string(n) + ")");
    }
    total_weight += nest.products[j].weight;
    weighted_revenue += nest.products[j].weight * nest.products[j].revenue;
  }
  if (!(total_weight > 0.0)) {
    return {0.0, 0.0};
  }
  return {total_weight, weighted_revenue / total_weight};
}

double scale_weight(double total_weight, double dissimilarity) {
  if (total_weight == 0.0) return 0.0;
  return std::pow(total_weight, dissimilarity);
}

double evaluate_revenue(const Instance& instance, const Assortment& assortment) {
  if (assortment.offered.size() != instance.nests.size()) {
    throw std::out_of_range("assortment has " + std::to_string(assortment.offered.size()) +
                            " nests, instance has " + std::to_string(instance.nests.size()));
  }
  double numerator = 0.0;
  double denominator = instance.no_purchase_weight;
  for (std::size_t i = 0; i < instance.nests.size(); ++i) {
    const auto [total_weight, mean_revenue] = nest_aggregates(instance.nests[i], assortment.offered[i]);
    const double scaled = scale_weight(total_weight, instance.nests[i].dissimilarity);
    numerator += scaled * mean_revenue;
    denominator += scaled;
  }
  return numerator / denominator;
}

}  // namespace nestsolve
