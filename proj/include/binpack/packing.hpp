#pragma once

#include "binpack/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace binpack {

// Bins hold positions into the item vector they were built from; loads are
// maintained exactly.
struct Packing {
  std::vector<std::vector<std::size_t>> bins;
  std::vector<Rational> loads;

  std::size_t bin_count() const { return bins.size(); }
};

struct VerifyResult {
  bool ok = true;
  std::string violation;
};

// True iff the packing covers exactly the given items and no bin exceeds 1.
VerifyResult verify_packing(const std::vector<Item>& items, const Packing& p);

// Greedy first fit in the given order: each item goes to the lowest-indexed
// bin where it still fits, bins created in first-use order.
Packing first_fit(const std::vector<Item>& items);

struct FFDTrace {
  Packing packing;
  std::size_t bin_count = 0;
  // Number of inner bins (all bins except the last) holding an item > 1/2.
  std::size_t tau = 0;
  // Size of the first item placed into the last bin; empty for 0 bins.
  std::optional<Rational> theta;
  std::vector<Rational> per_bin_first_item;
};

// Sorts by non-increasing size (ties by ascending index) and applies first
// fit. Zero-size items sort last and never open a bin of their own unless the
// whole instance is zero-size, in which case the output is a single bin.
FFDTrace ffd(std::vector<Item> items);

inline FFDTrace ffd_classes(const std::vector<ItemClass>& classes,
                            std::size_t max_items = 1u << 22) {
  return ffd(expand(classes, max_items));
}

// Checks the structural claims on an FFD output: any two bins sum to more
// than 1, bins with items > 1/2 form a prefix, and when a bin is opened by an
// item of size in (1/s, 1/(s-1)], every earlier bin without an item > 1/(s-1)
// holds at least s-1 items of sizes in (1/s, 1/(s-1)]. Returns a description
// of the first violation, or empty when all hold.
std::string ffd_structural_violation(const std::vector<Item>& items,
                                     const FFDTrace& trace);

}  // namespace binpack
