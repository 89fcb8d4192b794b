#pragma once

#include "binpack/rational.hpp"

#include <cstddef>
#include <vector>

namespace binpack {

// The harmonic-type sequence c_1 = 1, c_i = c_{i-1}(c_{i-1}+1), whose
// reciprocal series converges to pi_inf ~ 1.6910302. Terms double in digit
// count per step, so partial sums are kept as non-canonical fractions
// (denominator c_n) and compared by cross-multiplication.
struct HarmonicSequence {
  std::vector<BigInt> terms;  // c_1 .. c_n
  BigFraction partial_sum;    // sum of 1/c_i, i <= n; denominator c_n
  BigFraction tail_bound;     // 2 / c_{n+1}; partial + tail strictly brackets pi_inf
  BigFraction certified_upper;  // partial_sum + tail_bound over c_{n+1}

  // Canonical form; intended for small n (the gcd is the expensive part).
  Rational partial_sum_rational() const { return partial_sum.to_rational(); }
  double partial_sum_double() const { return partial_sum.to_double(); }
};

// n >= 1. Exact terms and partial sum with the 2/c_{n+1} tail bound; the tail
// is dominated by a geometric series of ratio <= 1/2 since c_{i+1} >= 2 c_i.
HarmonicSequence pi_sequence(std::size_t n);

// Double-precision partial sum; terms beyond ~10 underflow and are skipped.
double pi_partial_sum_double(std::size_t n);

// Canonical rational upper bound on pi_inf from depth n (partial + tail).
// Keep n modest (the denominator is c_{n+1}).
Rational pi_certified_upper(std::size_t n);

}  // namespace binpack
