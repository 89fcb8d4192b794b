#include "binpack/pi_sequence.hpp"

#include <doctest.h>

using namespace binpack;

TEST_CASE("sequence terms and partial sums") {
  auto h1 = pi_sequence(1);
  CHECK(h1.terms == std::vector<BigInt>{1});
  CHECK(h1.partial_sum_rational() == 1);

  auto h5 = pi_sequence(5);
  CHECK(h5.terms == std::vector<BigInt>({1, 2, 6, 42, 1806}));
  CHECK(h5.partial_sum_rational() == Rational(509, 301));

  auto h6 = pi_sequence(6);
  CHECK(h6.terms.back() == 1806 * BigInt(1807));
  CHECK(h6.partial_sum_rational() < Rational(1691030207, 1000000000));

  CHECK_THROWS_AS(pi_sequence(0), std::invalid_argument);
}

TEST_CASE("partial sums increase and the tail brackets the limit") {
  Rational prev(0);
  for (std::size_t n = 1; n <= 10; ++n) {
    auto h = pi_sequence(n);
    Rational ps = h.partial_sum_rational();
    CHECK(ps > prev);
    prev = ps;
    // certified window: partial < limit < partial + tail
    CHECK(h.certified_upper.to_rational() ==
          ps + h.tail_bound.to_rational());
    CHECK(h.tail_bound.to_rational() > 0);
  }
  // deeper partial sums stay inside every earlier certified window
  auto h6 = pi_sequence(6);
  auto h10 = pi_sequence(10);
  CHECK(h10.partial_sum_rational() < h6.certified_upper.to_rational());
  CHECK(h10.partial_sum_rational() > h6.partial_sum_rational());
}

TEST_CASE("cross-multiplied comparison agrees with canonical rationals") {
  auto h = pi_sequence(8);
  Rational bound(1691030207, 1000000000);
  CHECK(less(h.partial_sum, bound) == (h.partial_sum_rational() < bound));
  CHECK(less(h.certified_upper, bound) ==
        (h.certified_upper.to_rational() < bound));
  CHECK(h.partial_sum.to_double() ==
        doctest::Approx(to_double(h.partial_sum_rational())).epsilon(1e-12));
}

TEST_CASE("float partial sum saturates quickly") {
  CHECK(pi_partial_sum_double(30) == doctest::Approx(1.6910302068).epsilon(1e-9));
  CHECK(pi_partial_sum_double(10) == pi_partial_sum_double(30));
  CHECK(pi_partial_sum_double(1) == 1.0);
}

TEST_CASE("certified upper bound is a true upper bound at any depth") {
  Rational b12 = pi_certified_upper(12);
  Rational b6 = pi_certified_upper(6);
  CHECK(b12 < b6);  // deeper certificates tighten
  CHECK(b12 > pi_sequence(12).partial_sum_rational());
}
