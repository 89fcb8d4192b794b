#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace binpack {

// All size arithmetic is exact arbitrary-precision rational (GMP backed).
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(const BigInt& n, const BigInt& d) {
  return Rational(n) / Rational(d);
}

inline Rational make_rational(long long n, long long d) {
  return Rational(BigInt(n)) / Rational(BigInt(d));
}

// floor(a/b) for b > 0
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// ceil(a/b) for b > 0
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  return -floor_div(-a, b);
}

inline BigInt floor_rational(const Rational& r) { return floor_div(num(r), den(r)); }
inline BigInt ceil_rational(const Rational& r) { return ceil_div(num(r), den(r)); }

// Parses "n" or "n/d" with optional sign. Returns nullopt on malformed input
// (including denominator 0).
std::optional<Rational> parse_rational(std::string_view text);

// Lowest-terms "n/d", always with an explicit denominator ("1/2", "3/1").
std::string format_rational(const Rational& r);

// Decimal rendering with the given number of fractional digits (round to
// nearest, ties away from zero). Exact division, safe for huge operands.
std::string format_decimal(const Rational& r, int digits = 12);

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Exact rational value of a finite double (doubles are dyadic rationals).
Rational rational_from_double(double x);

// A fraction that is deliberately *not* canonicalized. Partial sums of the
// harmonic-type series have denominators with ~1e8 digits at depth 30, where
// gcd reduction is far more expensive than cross-multiplied comparison.
struct BigFraction {
  BigInt num{0};
  BigInt den{1};

  Rational to_rational() const { return make_rational(num, den); }
  double to_double() const;
};

inline bool less(const BigFraction& a, const BigFraction& b) {
  return a.num * b.den < b.num * a.den;
}
inline bool less(const BigFraction& a, const Rational& b) {
  return a.num * den(b) < num(b) * a.den;
}

}  // namespace binpack
