#include "pstirling/modular_comb.hpp"

#include "pstirling/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace pstirling {

namespace {

__extension__ using u128 = unsigned __int128;

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
}

void require_natural(const BigInt& n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + " must be >= 0");
}

// Product of the units in [1, p^N] is -1 mod p^N except for p = 2, N >= 3.
bool period_product_is_minus_one(unsigned long p, int precision) { return !(p == 2 && precision >= 3); }

// Fallback when no table is available: scan the residue range directly.
constexpr std::uint64_t kScanCap = std::uint64_t{1} << 24;

BigInt scan_unit_factorial(const BigInt& m, unsigned long p, int precision, const BigInt& modulus) {
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
  if (r > kScanCap) {
    throw ResourceCap("unit factorial mod " + std::to_string(p) + "^" + std::to_string(precision) +
                      " needs a scan of " + r.get_str() + " terms");
  }
  const unsigned long top = r.get_ui();
  BigInt acc = 1;
  for (unsigned long i = 1; i <= top; ++i) {
    if (i % p == 0) continue;
    acc *= i;
    acc %= modulus;
  }
  if (period_product_is_minus_one(p, precision) && mpz_odd_p(q.get_mpz_t())) {
    acc = acc == 0 ? BigInt(0) : BigInt(modulus - acc);
  }
  return acc;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, unsigned long p, int precision) {
  return dir / ("uft-p" + std::to_string(p) + "-n" + std::to_string(precision) + ".bin");
}

std::shared_ptr<const UnitFactorialTable> load_or_build(unsigned long p, int precision) {
  const char* dir = std::getenv("PSTIRLING_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::make_shared<const UnitFactorialTable>(p, precision);

  const auto path = cache_file(dir, p, precision);
  const std::uint64_t expected = mpz_get_ui(big_pow(p, static_cast<unsigned long>(precision)).get_mpz_t());
  std::error_code ec;
  if (std::filesystem::file_size(path, ec) == expected * sizeof(std::uint64_t) && !ec) {
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint64_t> entries(expected);
    if (in.read(reinterpret_cast<char*>(entries.data()),
                static_cast<std::streamsize>(entries.size() * sizeof(std::uint64_t)))) {
      return std::make_shared<const UnitFactorialTable>(p, precision, std::move(entries));
    }
  }
  auto table = std::make_shared<const UnitFactorialTable>(p, precision);
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) {
    out.write(reinterpret_cast<const char*>(table->entries().data()),
              static_cast<std::streamsize>(table->entries().size() * sizeof(std::uint64_t)));
  }
  return table;
}

} // namespace

long nu_p(const BigInt& n, unsigned long p) {
  require_prime(p);
  if (n == 0) throw ZeroInput("nu_p(0) is undefined");
  return *p_valuation(n, p);
}

BigInt u_p(const BigInt& n, unsigned long p) {
  require_prime(p);
  if (n == 0) throw ZeroInput("u_p(0) is undefined");
  BigInt rest;
  BigInt pp = p;
  mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
  return rest;
}

unsigned long d_p(const BigInt& n, unsigned long p) {
  require_prime(p);
  require_natural(n, "d_p argument");
  unsigned long sum = 0;
  BigInt rest = n;
  while (rest != 0) sum += mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
  return sum;
}

long lg_p(const BigInt& n, unsigned long p) {
  require_prime(p);
  if (n <= 0) throw ZeroInput("lg_p needs n >= 1");
  long t = 0;
  BigInt pow = p;
  while (pow <= n) {
    pow *= p;
    ++t;
  }
  return t;
}

long ceil_log_p(const BigInt& n, unsigned long p) {
  require_prime(p);
  if (n <= 0) throw ZeroInput("ceil_log_p needs n >= 1");
  long t = 0;
  BigInt pow = 1;
  while (pow < n) {
    pow *= p;
    ++t;
  }
  return t;
}

BigInt legendre_nu_factorial(const BigInt& n, unsigned long p) {
  require_prime(p);
  require_natural(n, "factorial argument");
  return BigInt((n - d_p(n, p)) / (p - 1));
}

BigInt pow_mod(const BigInt& base, const BigInt& exponent, unsigned long p, int digits) {
  require_prime(p);
  if (digits < 1) throw DomainError("pow_mod precision must be >= 1");
  require_natural(exponent, "exponent");
  const BigInt m = big_pow(p, static_cast<unsigned long>(digits));
  BigInt b;
  mpz_fdiv_r(b.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t());
  BigInt out;
  mpz_powm(out.get_mpz_t(), b.get_mpz_t(), exponent.get_mpz_t(), m.get_mpz_t());  // 0^0 = 1
  return out;
}

long nu_binomial(const BigInt& n, const BigInt& k, unsigned long p) {
  require_natural(k, "k");
  if (k > n) throw KGreaterThanN("C(" + n.get_str() + ", " + k.get_str() + ") has k > n");
  const unsigned long carries = d_p(k, p) + d_p(BigInt(n - k), p) - d_p(n, p);
  return static_cast<long>(carries / (p - 1));
}

UnitFactorialTable::UnitFactorialTable(unsigned long p, int precision) : p_(p), precision_(precision) {
  require_prime(p);
  if (precision < 1) throw DomainError("precision must be >= 1");
  const BigInt m = big_pow(p, static_cast<unsigned long>(precision));
  if (m > kUnitFactorialTableCap) throw ResourceCap("unit factorial table above the 2^22 entry cap");
  modulus_ = m.get_ui();
  entries_.resize(modulus_);
  entries_[0] = 1 % modulus_;
  for (std::uint64_t i = 1; i < modulus_; ++i) {
    entries_[i] = i % p == 0 ? entries_[i - 1] : static_cast<std::uint64_t>(u128{entries_[i - 1]} * i % modulus_);
  }
}

UnitFactorialTable::UnitFactorialTable(unsigned long p, int precision, std::vector<std::uint64_t> entries)
    : p_(p), precision_(precision), entries_(std::move(entries)) {
  modulus_ = big_pow(p, static_cast<unsigned long>(precision)).get_ui();
  if (entries_.size() != modulus_) throw DomainError("unit factorial table has the wrong size");
}

std::uint64_t UnitFactorialTable::unit_factorial(const BigInt& m) const {
  if (m < 0) throw DomainError("unit factorial of a negative number");
  BigInt q;
  const std::uint64_t r = mpz_fdiv_q_ui(q.get_mpz_t(), m.get_mpz_t(), modulus_);
  const std::uint64_t base = entries_[r];
  const std::uint64_t sigma = period_product();
  if (sigma == 1 || !mpz_odd_p(q.get_mpz_t())) return base;
  return static_cast<std::uint64_t>(u128{base} * sigma % modulus_);
}

std::shared_ptr<const UnitFactorialTable> unit_factorial_table(unsigned long p, int precision) {
  require_prime(p);
  if (precision < 1) throw DomainError("precision must be >= 1");
  if (big_pow(p, static_cast<unsigned long>(precision)) > kUnitFactorialTableCap) return nullptr;

  static std::mutex mutex;
  static std::map<std::pair<unsigned long, int>, std::shared_ptr<const UnitFactorialTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{p, precision}];
  if (!slot) slot = load_or_build(p, precision);
  return slot;
}

BigInt unit_part_factorial_mod(const BigInt& n, unsigned long p, int precision) {
  require_natural(n, "factorial argument");
  const BigInt m = big_pow(p, static_cast<unsigned long>(precision));
  const auto table = unit_factorial_table(p, precision);
  // u_p(n!) = F(n) * u_p(floor(n/p)!)
  BigInt acc = 1;
  BigInt q = n;
  while (q > 0) {
    if (table) {
      acc *= table->unit_factorial(q);
    } else {
      acc *= scan_unit_factorial(q, p, precision, m);
    }
    acc %= m;
    mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), p);
  }
  return acc;
}

PadicInt binomial_mod_prime_power(const BigInt& n, const BigInt& k, unsigned long p, int precision) {
  require_prime(p);
  if (precision < 1) throw DomainError("precision must be >= 1");
  require_natural(n, "n");
  require_natural(k, "k");
  const long v = nu_binomial(n, k, p);
  if (v >= precision) return PadicInt::zero(p, precision);

  const BigInt m = big_pow(p, static_cast<unsigned long>(precision));
  const BigInt num = unit_part_factorial_mod(n, p, precision);
  const BigInt den = unit_part_factorial_mod(k, p, precision) * unit_part_factorial_mod(BigInt(n - k), p, precision);
  BigInt inv;
  BigInt den_red = den % m;
  mpz_invert(inv.get_mpz_t(), den_red.get_mpz_t(), m.get_mpz_t());
  return {p, precision, BigInt(num * inv * big_pow(p, static_cast<unsigned long>(v)))};
}

PadicInt stirling2_small_k_mod(const BigInt& n, unsigned long d, unsigned long p, int precision) {
  require_prime(p);
  if (precision < 1) throw DomainError("precision must be >= 1");
  require_natural(n, "n");
  if (d > kSmallKBound) throw ResourceCap("small-k Stirling evaluation capped at d <= " + std::to_string(kSmallKBound));
  if (n < d) return PadicInt::zero(p, precision);

  const long v = legendre_nu_factorial(d, p).get_si();
  const int work = precision + static_cast<int>(v);
  const BigInt m = big_pow(p, static_cast<unsigned long>(work));

  BigInt sum = 0;
  BigInt coeff;
  for (unsigned long i = 0; i <= d; ++i) {
    mpz_bin_uiui(coeff.get_mpz_t(), d, i);
    const BigInt term = coeff * pow_mod(i, n, p, work);
    if ((d - i) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), m.get_mpz_t());

  const BigInt pv = big_pow(p, static_cast<unsigned long>(v));
  if (!mpz_divisible_p(sum.get_mpz_t(), pv.get_mpz_t())) {
    throw NonIntegralSum("alternating sum for S(" + n.get_str() + ", " + std::to_string(d) +
                         ") is not divisible by d!");
  }
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), d);
  const BigInt unit = u_p(fact, p);
  const BigInt out_mod = big_pow(p, static_cast<unsigned long>(precision));
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), out_mod.get_mpz_t());
  BigInt q;
  mpz_divexact(q.get_mpz_t(), sum.get_mpz_t(), pv.get_mpz_t());
  return {p, precision, BigInt(q * inv)};
}

} // namespace pstirling
