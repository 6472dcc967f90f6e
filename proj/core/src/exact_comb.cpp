#include "pstirling/exact_comb.hpp"

#include "pstirling/errors.hpp"

#include <algorithm>
#include <string>

namespace pstirling {

namespace {

void require_exact_cap(unsigned long n) {
  if (n > kExactStirlingCap) {
    throw ResourceCap("exact Stirling computation capped at n <= " + std::to_string(kExactStirlingCap));
  }
}

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;  // a, b < 2^63
  return s >= m ? s - m : s;
}

} // namespace

BigInt stirling2_exact(unsigned long n, unsigned long k) {
  require_exact_cap(n);
  if (k > n) return 0;
  if (n == 0) return 1;
  if (k == 0) return 0;
  // row[j] = S(r, j) for j <= k, rolled from r = 0 to n
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;
  for (unsigned long r = 1; r <= n; ++r) {
    for (unsigned long j = std::min(r, k); j >= 1; --j) {
      row[j] = j * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row[k];
}

BigInt stirling1_unsigned_exact(unsigned long n, unsigned long k) {
  require_exact_cap(n);
  if (k > n) return 0;
  if (n == 0) return 1;
  if (k == 0) return 0;
  // |s(r+1, j)| = |s(r, j-1)| + r |s(r, j)|
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;
  for (unsigned long r = 0; r < n; ++r) {
    for (unsigned long j = std::min(r + 1, k); j >= 1; --j) {
      row[j] = row[j - 1] + r * row[j];
    }
    row[0] = 0;
  }
  return row[k];
}

BigInt binomial_exact(const BigInt& n, unsigned long k) {
  if (n < 0) throw DomainError("binomial_exact needs n >= 0");
  if (n < k) return 0;
  if (k > 10'000'000) throw ResourceCap("binomial_exact capped at k <= 10^7");
  BigInt out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

ExactStirlingTable::ExactStirlingTable(unsigned long n_max) : n_max_(n_max), zero_(0) {
  require_exact_cap(n_max);
  rows_.resize(n_max + 1);
  rows_[0] = {BigInt(1)};
  for (unsigned long n = 1; n <= n_max; ++n) {
    auto& row = rows_[n];
    const auto& prev = rows_[n - 1];
    row.assign(n + 1, 0);
    for (unsigned long k = 1; k <= n; ++k) {
      row[k] = prev[k - 1];
      if (k < n) row[k] += k * prev[k];
    }
  }
}

const BigInt& ExactStirlingTable::at(unsigned long n, unsigned long k) const {
  if (n > n_max_ || k > n) return zero_;
  return rows_[n][k];
}

StirlingTable::StirlingTable(unsigned long n_max, const BigInt& modulus) : n_max_(n_max), modulus_(modulus) {
  if (modulus < 2) throw DomainError("modulus must be >= 2");
  if (mpz_sizeinbase(modulus.get_mpz_t(), 2) > 63) throw ResourceCap("modular Stirling tables need modulus < 2^63");
  if (n_max > kModularStirlingCap) {
    throw ResourceCap("modular Stirling computation capped at n <= " + std::to_string(kModularStirlingCap));
  }
  const std::uint64_t entries = (std::uint64_t{n_max} + 1) * (n_max + 2) / 2;
  if (entries > kModularTableEntryCap) throw ResourceCap("modular Stirling triangle exceeds memory cap");
  m_ = mpz_get_ui(modulus.get_mpz_t());
  cells_.assign(entries, 0);
  cells_[0] = 1 % m_;
  std::uint64_t prev = 0;  // offset of row n-1
  for (unsigned long n = 1; n <= n_max; ++n) {
    const std::uint64_t cur = prev + n;
    for (unsigned long k = 1; k <= n; ++k) {
      std::uint64_t v = cells_[prev + k - 1];
      if (k < n) v = addmod(v, mulmod(k % m_, cells_[prev + k], m_), m_);
      cells_[cur + k] = v;
    }
    prev = cur;
  }
}

std::uint64_t StirlingTable::at(unsigned long n, unsigned long k) const {
  if (n > n_max_ || k > n) return 0;
  return cells_[std::uint64_t{n} * (n + 1) / 2 + k];
}

StirlingTable stirling2_mod_table(unsigned long n_max, const BigInt& modulus) { return {n_max, modulus}; }

std::vector<std::uint64_t> stirling2_mod_row(unsigned long n, std::uint64_t modulus) {
  if (modulus < 2 || modulus >> 63) throw DomainError("modulus must lie in [2, 2^63)");
  if (n > kModularStirlingCap) {
    throw ResourceCap("modular Stirling computation capped at n <= " + std::to_string(kModularStirlingCap));
  }
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1 % modulus;
  for (unsigned long r = 1; r <= n; ++r) {
    for (unsigned long k = r; k >= 1; --k) {
      row[k] = addmod(row[k - 1], mulmod(k % modulus, row[k], modulus), modulus);
    }
    row[0] = 0;
  }
  return row;
}

} // namespace pstirling
