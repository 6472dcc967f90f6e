#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace pstirling {

using BigInt = mpz_class;
/// Always canonical: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Rational = mpq_class;

std::string to_string(const BigInt& n);

/// "num/den" with the sign on the numerator, or just "num" when den = 1.
std::string to_string(const Rational& r);

Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "a" or "a/b"; throws DomainError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Exponent of p in n; nullopt for n = 0.
std::optional<long> p_valuation(const BigInt& n, unsigned long p);
std::optional<long> p_valuation(const Rational& r, unsigned long p);

BigInt big_pow(unsigned long base, unsigned long exponent);

} // namespace pstirling
