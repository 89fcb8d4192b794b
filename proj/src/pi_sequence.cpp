#include "binpack/pi_sequence.hpp"

#include <stdexcept>

namespace binpack {

HarmonicSequence pi_sequence(std::size_t n) {
  if (n < 1) throw std::invalid_argument("pi_sequence requires n >= 1");
  HarmonicSequence hs;
  hs.terms.reserve(n);
  BigInt c = 1;
  BigInt sum_num = 1;  // partial sum as sum_num / c
  hs.terms.push_back(c);
  for (std::size_t i = 2; i <= n; ++i) {
    BigInt succ = c + 1;
    sum_num = sum_num * succ + 1;
    c = c * succ;
    hs.terms.push_back(c);
  }
  hs.partial_sum = {sum_num, c};
  BigInt c_next = c * (c + 1);
  hs.tail_bound = {BigInt(2), c_next};
  hs.certified_upper = {sum_num * (c + 1) + 2, c_next};
  return hs;
}

double pi_partial_sum_double(std::size_t n) {
  double sum = 0.0;
  BigInt c = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i > 1) c = c * (c + 1);
    if (mpz_sizeinbase(c.backend().data(), 2) > 1100) break;  // < 2^-1100 left
    sum += 1.0 / c.convert_to<double>();
  }
  return sum;
}

Rational pi_certified_upper(std::size_t n) {
  HarmonicSequence hs = pi_sequence(n);
  return hs.certified_upper.to_rational();
}

}  // namespace binpack
