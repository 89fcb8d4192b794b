#include "binpack/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace binpack {

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  }
  out = BigInt(std::string(s));
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  auto slash = text.find('/');
  BigInt n, d;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, n)) return std::nullopt;
    return Rational(n);
  }
  if (!parse_integer(text.substr(0, slash), n)) return std::nullopt;
  if (!parse_integer(text.substr(slash + 1), d)) return std::nullopt;
  if (d == 0) return std::nullopt;
  return make_rational(n, d);
}

std::string format_rational(const Rational& r) {
  return num(r).str() + "/" + den(r).str();
}

std::string format_decimal(const Rational& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt n = num(r) * scale * 2;
  BigInt d = den(r);
  BigInt q = n / d;
  // round half away from zero
  if (q >= 0)
    q = (q + 1) / 2;
  else
    q = (q - 1) / 2;
  bool neg = q < 0;
  BigInt a = neg ? BigInt(-q) : q;
  BigInt ip = a / scale;
  BigInt fp = a % scale;
  std::string frac = fp.str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = (neg ? "-" : "") + ip.str();
  if (digits > 0) out += "." + frac;
  return out;
}

Rational rational_from_double(double x) {
  Rational r;
  mpq_set_d(r.backend().data(), x);
  return r;
}

double BigFraction::to_double() const {
  // Shift the numerator so the integer quotient carries ~64 significant bits,
  // then scale back. Avoids materializing a canonical mpq for huge operands.
  long nb = static_cast<long>(mpz_sizeinbase(num.backend().data(), 2));
  long db = static_cast<long>(mpz_sizeinbase(den.backend().data(), 2));
  long shift = db - nb + 64;
  if (shift < 0) shift = 0;
  BigInt q = (num << static_cast<unsigned>(shift)) / den;
  return std::ldexp(q.template convert_to<double>(), static_cast<int>(-shift));
}

}  // namespace binpack
