#include "pstirling/rational.hpp"

#include "pstirling/errors.hpp"

namespace pstirling {

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  BigInt num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = BigInt(text, 10);
    } else {
      num = BigInt(text.substr(0, slash), 10);
      den = BigInt(text.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational number: '" + text + "'");
  }
  if (den == 0) throw DomainError("zero denominator in '" + text + "'");
  return make_rational(num, den);
}

std::optional<long> p_valuation(const BigInt& n, unsigned long p) {
  if (n == 0) return std::nullopt;
  BigInt pp = p;
  BigInt rest;
  long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
  return v;
}

std::optional<long> p_valuation(const Rational& r, unsigned long p) {
  if (r == 0) return std::nullopt;
  return *p_valuation(r.get_num(), p) - *p_valuation(r.get_den(), p);
}

BigInt big_pow(unsigned long base, unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

} // namespace pstirling
