#pragma once

#include "binpack/instance.hpp"
#include "binpack/packing.hpp"

#include <optional>
#include <stdexcept>

namespace binpack {

struct SolverLimits {
  // Item-level branch and bound handles instances up to this many items.
  std::size_t item_limit = 24;
  // Beyond that, instances with <= 3 distinct sizes go through pattern
  // enumeration; multi-size pattern search caps the expanded count here.
  unsigned long long pattern_total_limit = 200000;
};

class SolveTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactResult {
  BigInt bins{0};
  // Present for item-level solves only; pattern solves certify the count.
  std::optional<Packing> witness;
  enum class Method { Empty, BranchAndBound, PatternEnum, SingleSize } method =
      Method::Empty;
};

// Minimum number of feasible bins, exact. Depth-first branch and bound over
// bins with items in non-increasing size order, pruned by the ceil(remaining
// size) bound and identical-residual symmetry; identical-size instances of
// any multiplicity resolve by the per-bin capacity formula, and instances
// with 2-3 distinct sizes by exact pattern covering.
// Throws SolveTooLargeError when the instance fits none of those regimes.
ExactResult exact_optimal(const std::vector<ItemClass>& classes,
                          const SolverLimits& lim = {});

inline ExactResult exact_optimal_sizes(const std::vector<Rational>& sizes,
                                       const SolverLimits& lim = {}) {
  return exact_optimal(classes_from_sizes(sizes), lim);
}

}  // namespace binpack
