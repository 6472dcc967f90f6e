#pragma once

#include "pstirling/padic.hpp"
#include "pstirling/rational.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace pstirling {

/// Largest table (number of residues p^N) a UnitFactorialTable may hold.
inline constexpr std::uint64_t kUnitFactorialTableCap = std::uint64_t{1} << 22;
/// Largest d accepted by stirling2_small_k_mod.
inline constexpr unsigned long kSmallKBound = 64;

// Elementary p-adic functions on naturals. ZeroInput for n = 0 where undefined.
long nu_p(const BigInt& n, unsigned long p);
BigInt u_p(const BigInt& n, unsigned long p);
/// Sum of base-p digits, n >= 0.
unsigned long d_p(const BigInt& n, unsigned long p);
/// floor(log_p n), n >= 1.
long lg_p(const BigInt& n, unsigned long p);
/// ceil(log_p n), n >= 1: smallest t with p^t >= n.
long ceil_log_p(const BigInt& n, unsigned long p);

/// nu_p(n!) = (n - d_p(n)) / (p - 1).
BigInt legendre_nu_factorial(const BigInt& n, unsigned long p);

/// base^exponent mod p^M with 0^0 = 1. base may be negative.
BigInt pow_mod(const BigInt& base, const BigInt& exponent, unsigned long p, int digits);

/// nu_p C(n,k) from base-p digit sums. Throws KGreaterThanN.
long nu_binomial(const BigInt& n, const BigInt& k, unsigned long p);

/// Products of the integers in [1, m] prime to p, reduced mod p^N, for m < p^N.
class UnitFactorialTable {
public:
  UnitFactorialTable(unsigned long p, int precision);
  UnitFactorialTable(unsigned long p, int precision, std::vector<std::uint64_t> entries);

  unsigned long prime() const noexcept { return p_; }
  int precision() const noexcept { return precision_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t size() const noexcept { return entries_.size(); }
  std::uint64_t at(std::uint64_t m) const { return entries_.at(m); }
  const std::vector<std::uint64_t>& entries() const noexcept { return entries_; }

  /// Product of the units in a full period [1, p^N], i.e. entry(p^N - 1).
  std::uint64_t period_product() const noexcept { return entries_.back(); }

  /// Product of integers in [1, m] prime to p, mod p^N, for arbitrary m >= 0.
  std::uint64_t unit_factorial(const BigInt& m) const;

private:
  unsigned long p_;
  int precision_;
  std::uint64_t modulus_;
  std::vector<std::uint64_t> entries_;
};

/// Cached table for (p, N); nullptr when p^N exceeds kUnitFactorialTableCap.
/// Tables are built once and shared read-only. When PSTIRLING_CACHE_DIR is set,
/// built tables are persisted there and loaded on later runs.
std::shared_ptr<const UnitFactorialTable> unit_factorial_table(unsigned long p, int precision);

/// u_p(n!) mod p^N.
BigInt unit_part_factorial_mod(const BigInt& n, unsigned long p, int precision);

/// C(n,k) mod p^N via the generalized-factorial decomposition; works for
/// astronomically large n. Throws KGreaterThanN.
PadicInt binomial_mod_prime_power(const BigInt& n, const BigInt& k, unsigned long p, int precision);

/// S(n,d) mod p^N for small d and arbitrary n, from the explicit alternating sum
/// evaluated mod p^(N + nu_p(d!)) and divided exactly by d!.
PadicInt stirling2_small_k_mod(const BigInt& n, unsigned long d, unsigned long p, int precision);

} // namespace pstirling
