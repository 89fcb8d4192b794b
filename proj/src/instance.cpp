#include "binpack/instance.hpp"

#include <stdexcept>

namespace binpack {

ValidationReport validate_instance(const std::vector<ItemClass>& classes) {
  ValidationReport rep;
  rep.class_count = classes.size();
  std::size_t line = 0;
  for (const auto& c : classes) {
    ++line;
    if (c.size < 0) {
      rep.ok = false;
      rep.errors.push_back("class " + std::to_string(line) + ": negative size " +
                           format_rational(c.size));
      continue;
    }
    if (c.size > 1) {
      rep.ok = false;
      rep.errors.push_back("class " + std::to_string(line) + ": size exceeds 1 (" +
                           format_rational(c.size) + ")");
      continue;
    }
    if (c.count < 1) {
      rep.ok = false;
      rep.errors.push_back("class " + std::to_string(line) + ": count must be >= 1");
      continue;
    }
    rep.item_count += c.count;
    rep.total_size += c.size * Rational(c.count);
  }
  return rep;
}

std::vector<Item> expand(const std::vector<ItemClass>& classes, std::size_t max_items) {
  BigInt n = total_count(classes);
  if (n > max_items) {
    throw std::length_error("instance expansion exceeds " + std::to_string(max_items) +
                            " items");
  }
  std::vector<Item> items;
  items.reserve(n.convert_to<std::size_t>());
  std::size_t idx = 0;
  for (const auto& c : classes) {
    for (BigInt i = 0; i < c.count; ++i) {
      items.push_back({c.size, idx++, c.cluster});
    }
  }
  return items;
}

BigInt total_count(const std::vector<ItemClass>& classes) {
  BigInt n = 0;
  for (const auto& c : classes) n += c.count;
  return n;
}

Rational total_size(const std::vector<ItemClass>& classes) {
  Rational s = 0;
  for (const auto& c : classes) s += c.size * Rational(c.count);
  return s;
}

}  // namespace binpack
