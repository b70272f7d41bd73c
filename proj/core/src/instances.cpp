#include "nestsolve/instances.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nestsolve/errors.hpp"

namespace nestsolve {

std::string format_double(double value) {
  char buffer[40];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

Instance generate(const GenSpec& spec) {
  if (spec.num_nests < 1) throw BadSpecError("num_nests must be >= 1");
  if (spec.products_per_nest < 1) throw BadSpecError("products_per_nest must be >= 1");
  if (!(spec.weight_low >= 0.0) || !(spec.weight_high >= spec.weight_low)) {
    throw BadSpecError("weight range must satisfy 0 <= low <= high");
  }
  if (!(spec.revenue_low >= 0.0) || !(spec.revenue_high >= spec.revenue_low)) {
    throw BadSpecError("revenue range must satisfy 0 <= low <= high");
  }
  if (!(spec.dissimilarity > 0.0) || !(spec.dissimilarity <= 1.0)) {
    throw BadSpecError("dissimilarity must lie in (0, 1]");
  }
  if (!(spec.no_purchase_weight > 0.0)) {
    throw BadSpecError("no_purchase_weight must be > 0");
  }
  if (spec.capacities && static_cast<int>(spec.capacities->size()) != spec.num_nests) {
    throw BadSpecError("capacities must list one value per nest");
  }
  if (spec.capacities) {
    for (int c : *spec.capacities) {
      if (c < 0) throw BadSpecError("capacities must be >= 0");
    }
  }

  const int half_capacity = std::max(1, spec.products_per_nest / 2);
  SplitMix64 rng(spec.seed);
  Instance instance;
  instance.no_purchase_weight = spec.no_purchase_weight;
  instance.nests.resize(spec.num_nests);
  for (int i = 0; i < spec.num_nests; ++i) {
    Nest& nest = instance.nests[i];
    nest.dissimilarity = spec.dissimilarity;
    nest.capacity = spec.capacities ? (*spec.capacities)[i] : half_capacity;
    nest.products.resize(spec.products_per_nest);
    for (int j = 0; j < spec.products_per_nest; ++j) {
      nest.products[j].weight =
          spec.weight_low + rng.unit_double() * (spec.weight_high - spec.weight_low);
      nest.products[j].revenue =
          spec.revenue_low + rng.unit_double() * (spec.revenue_high - spec.revenue_low);
    }
  }
  return instance;
}

namespace {

double require_number(const nlohmann::json& node, const char* field, const std::string& where) {
  if (!node.contains(field)) {
    throw ParseError("missing field \"" + std::string(field) + "\" in " + where);
  }
  if (!node[field].is_number()) {
    throw ParseError("field \"" + std::string(field) + "\" in " + where + " must be a number");
  }
  return node[field].get<double>();
}

}  // namespace

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError(path.string() + ": top level must be an object");

  Instance instance;
  instance.no_purchase_weight = require_number(root, "v0", "top-level object");
  if (!root.contains("nests") || !root["nests"].is_array()) {
    throw ParseError("missing or non-array field \"nests\" in top-level object");
  }
  int nest_index = 0;
  for (const auto& nest_node : root["nests"]) {
    const std::string where = "nest " + std::to_string(nest_index);
    if (!nest_node.is_object()) throw ParseError(where + " must be an object");
    Nest nest;
    nest.dissimilarity = require_number(nest_node, "gamma", where);
    const double capacity = require_number(nest_node, "capacity", where);
    if (capacity != std::floor(capacity) || capacity < 0 || capacity > 1e9) {
      throw ParseError("field \"capacity\" in " + where + " must be a non-negative integer");
    }
    nest.capacity = static_cast<int>(capacity);
    if (!nest_node.contains("products") || !nest_node["products"].is_array()) {
      throw ParseError("missing or non-array field \"products\" in " + where);
    }
    int product_index = 0;
    for (const auto& product_node : nest_node["products"]) {
      const std::string pwhere = where + ", product " + std::to_string(product_index);
      if (!product_node.is_object()) throw ParseError(pwhere + " must be an object");
      Product product;
      product.weight = require_number(product_node, "v", pwhere);
      product.revenue = require_number(product_node, "r", pwhere);
      nest.products.push_back(product);
      ++product_index;
    }
    instance.nests.push_back(std::move(nest));
    ++nest_index;
  }
  if (const auto error = validate(instance)) {
    throw ParseError(path.string() + ": " + error->message());
  }
  return instance;
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << "{\n  \"v0\": " << format_double(instance.no_purchase_weight) << ",\n  \"nests\": [";
  for (std::size_t i = 0; i < instance.nests.size(); ++i) {
    const Nest& nest = instance.nests[i];
    out << (i == 0 ? "" : ",") << "\n    {\"gamma\": " << format_double(nest.dissimilarity)
        << ", \"capacity\": " << nest.capacity << ", \"products\": [";
    for (std::size_t j = 0; j < nest.products.size(); ++j) {
      out << (j == 0 ? "" : ", ") << "{\"v\": " << format_double(nest.products[j].weight)
          << ", \"r\": " << format_double(nest.products[j].revenue) << "}";
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  if (!out.flush()) {
    throw IoError("failed writing " + path.string());
  }
}

void export_lp(const Instance& instance, std::span<const CandidateSet> candidate_sets,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << "\\ Reduced assortment LP: minimize z subject to the revenue balance\n"
         "\\ and one cut per candidate assortment line.\n"
         "Minimize\n obj: z\nSubject To\n";
  out << " link: " << format_double(instance.no_purchase_weight) << " z";
  for (std::size_t i = 0; i < candidate_sets.size(); ++i) {
    out << " - y" << (i + 1);
    if ((i + 1) % 8 == 0 && i + 1 < candidate_sets.size()) out << "\n      ";
  }
  out << " >= 0\n";
  for (std::size_t i = 0; i < candidate_sets.size(); ++i) {
    const auto& candidates = candidate_sets[i].candidates;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      out << " n" << (i + 1) << "_c" << (k + 1) << ": y" << (i + 1) << " + "
          << format_double(candidates[k].scaled_weight) << " z >= "
          << format_double(candidates[k].scaled_revenue) << "\n";
    }
  }
  out << "Bounds\n z free\n";
  for (std::size_t i = 0; i < candidate_sets.size(); ++i) {
    out << " y" << (i + 1) << " free\n";
  }
  out << "End\n";
  if (!out.flush()) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace nestsolve
