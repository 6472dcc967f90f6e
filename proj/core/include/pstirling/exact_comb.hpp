#pragma once

#include "pstirling/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pstirling {

/// Largest n accepted by the exact (arbitrary-precision) Stirling routines.
inline constexpr unsigned long kExactStirlingCap = 2000;
/// Largest n accepted by modular Stirling tables and rows.
inline constexpr unsigned long kModularStirlingCap = 200000;
/// Largest number of entries a modular triangle may hold (8 bytes each).
inline constexpr std::uint64_t kModularTableEntryCap = std::uint64_t{1} << 27;

/// S(n,k), Stirling number of the second kind. 0 for k > n. Throws ResourceCap above kExactStirlingCap.
BigInt stirling2_exact(unsigned long n, unsigned long k);

/// |s(n,k)|, unsigned Stirling number of the first kind.
BigInt stirling1_unsigned_exact(unsigned long n, unsigned long k);

/// C(n,k), 0 for k > n.
BigInt binomial_exact(const BigInt& n, unsigned long k);

/// Full triangle S(n,k), 0 <= k <= n <= n_max, exact.
class ExactStirlingTable {
public:
  explicit ExactStirlingTable(unsigned long n_max);

  unsigned long n_max() const noexcept { return n_max_; }
  /// 0 outside the triangle.
  const BigInt& at(unsigned long n, unsigned long k) const;

private:
  unsigned long n_max_;
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_;
};

/// Full triangle S(n,k) mod m for 0 <= k <= n <= n_max.
class StirlingTable {
public:
  /// modulus >= 2 and < 2^63. Throws DomainError / ResourceCap.
  StirlingTable(unsigned long n_max, const BigInt& modulus);

  unsigned long n_max() const noexcept { return n_max_; }
  const BigInt& modulus() const noexcept { return modulus_; }
  std::uint64_t modulus_u64() const noexcept { return m_; }
  /// 0 outside the triangle.
  std::uint64_t at(unsigned long n, unsigned long k) const;

private:
  unsigned long n_max_;
  BigInt modulus_;
  std::uint64_t m_;
  std::vector<std::uint64_t> cells_;  // row-major triangle
};

StirlingTable stirling2_mod_table(unsigned long n_max, const BigInt& modulus);

/// Row n of the triangle mod m, computed with a rolling buffer (n <= kModularStirlingCap).
std::vector<std::uint64_t> stirling2_mod_row(unsigned long n, std::uint64_t modulus);

} // namespace pstirling
