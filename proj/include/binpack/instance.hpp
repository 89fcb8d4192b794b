#pragma once

#include "binpack/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace binpack {

// One concrete item. The index is unique within an instance and defines the
// processing order (ties in FFD break by ascending index).
struct Item {
  Rational size;
  std::size_t index = 0;
  std::string cluster;  // empty = no cluster tag
};

// A size with multiplicity; the unit of instance description and generation.
struct ItemClass {
  Rational size;
  BigInt count{1};
  std::string cluster;
  std::string label;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::size_t class_count = 0;
  BigInt item_count{0};
  Rational total_size{0};
};

// Checks size range [0,1] and count >= 1 for every class. Rationals are
// canonical by construction, so only range/multiplicity can go wrong here.
ValidationReport validate_instance(const std::vector<ItemClass>& classes);

// Expands classes into concrete items, indices assigned in class order.
// Throws std::length_error if the expansion exceeds max_items.
std::vector<Item> expand(const std::vector<ItemClass>& classes,
                         std::size_t max_items = 1u << 22);

BigInt total_count(const std::vector<ItemClass>& classes);
Rational total_size(const std::vector<ItemClass>& classes);

inline std::vector<ItemClass> classes_from_sizes(const std::vector<Rational>& sizes) {
  std::vector<ItemClass> out;
  out.reserve(sizes.size());
  for (const auto& s : sizes) out.push_back({s, 1, "", ""});
  return out;
}

}  // namespace binpack
