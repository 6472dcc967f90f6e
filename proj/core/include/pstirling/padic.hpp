#pragma once

#include "pstirling/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pstirling {

bool is_prime(unsigned long n);

/// A p-adic integer known to absolute precision N: the residue class mod p^N.
///
/// Residues are canonical in [0, p^N). Division by a value of valuation v
/// costs v digits of precision. A value whose residue is 0 has valuation
/// "at least N", reported as an empty optional and never conflated with 0.
class PadicInt {
public:
  /// Reduces `residue` into [0, p^N); throws DomainError when p is not prime or N < 1.
  PadicInt(unsigned long prime, int precision, const BigInt& residue);

  static PadicInt zero(unsigned long prime, int precision);
  static PadicInt one(unsigned long prime, int precision);

  unsigned long prime() const noexcept { return prime_; }
  int precision() const noexcept { return precision_; }
  const BigInt& residue() const noexcept { return residue_; }
  BigInt modulus() const;

  /// nullopt means the value is zero to its full precision (valuation >= N).
  std::optional<int> valuation() const;
  bool is_zero() const noexcept { return residue_ == 0; }

  /// x = p^v * unit_part, unit_part known mod p^(N - v). Throws ZeroToPrecision.
  PadicInt unit_part() const;

  /// Same value at a lower precision; throws InsufficientPrecision when asked to raise it.
  PadicInt reduce(int precision) const;

  /// Base-p digits, least significant first, exactly `precision()` of them.
  /// Digits 0-9a-z for p <= 36, otherwise comma separated decimal digits.
  std::string digit_string() const;

  PadicInt operator-() const;
  friend PadicInt operator+(const PadicInt& x, const PadicInt& y);
  friend PadicInt operator-(const PadicInt& x, const PadicInt& y);
  friend PadicInt operator*(const PadicInt& x, const PadicInt& y);

  /// Structural equality: same prime, same precision, same residue.
  friend bool operator==(const PadicInt& x, const PadicInt& y) = default;

private:
  struct Unchecked {};
  PadicInt(Unchecked, unsigned long prime, int precision, BigInt residue);
  friend PadicInt div(const PadicInt& x, const PadicInt& y);

  unsigned long prime_;
  int precision_;
  BigInt residue_;
};

enum class ArithOp { add, sub, mul };

/// Ring operation mod p^min(N_x, N_y). Throws PrimeMismatch.
PadicInt arith(const PadicInt& x, const PadicInt& y, ArithOp op);

PadicInt padic_from_integer(const BigInt& n, unsigned long p, int precision);

/// Throws NotPAdicInteger when the denominator is divisible by p.
PadicInt padic_from_rational(const Rational& r, unsigned long p, int precision);

/// Exact quotient x / y. The result is known to precision min(N_x, N_y) - v(y).
/// Throws DivisionByZero when y is zero to precision, NotDivisible when v(x) < v(y).
PadicInt div(const PadicInt& x, const PadicInt& y);

/// Multiplies by an exact rational. When v_p(r) = -s < 0 the product loses s
/// digits and x must be divisible by p^s (else NotPAdicInteger).
PadicInt scale(const PadicInt& x, const Rational& r);

/// True iff x and y agree mod p^M. Throws InsufficientPrecision when M exceeds
/// either precision, PrimeMismatch on differing primes.
bool agree_mod(const PadicInt& x, const PadicInt& y, int digits);

/// Number of leading digits on which x and y agree, capped at the smaller precision.
int agreement(const PadicInt& x, const PadicInt& y);

std::string describe(const PadicInt& x);

// ---------------------------------------------------------------------------
// Limits of stabilizing sequences

struct LimitPolicy {
  int e_start = 0;
  int e_max = 0;
  int agree_count = 2;

  /// e_start = N + 2, e_max = N + 12, two consecutive agreeing values.
  static LimitPolicy defaults(int digits);
};

struct LimitStep {
  int e;
  PadicInt value;  // as produced by the generator, possibly more precise than N
};

struct LimitReport {
  PadicInt value;
  int e_used = 0;       // largest index evaluated
  int e_stable = -1;    // first index of the agreeing run, -1 when not stabilized
  bool stabilized = false;
  std::vector<LimitStep> history;

  /// agreement(history[i], history[i+1]) for each consecutive pair.
  std::vector<int> agreement_valuations() const;
};

using SequenceGenerator = std::function<PadicInt(int e)>;

/// Evaluates gen(e) for e = e_start, e_start+1, ... until `agree_count`
/// consecutive values agree mod p^N, or e_max is reached (stabilized = false).
/// Values whose precision is below N never count toward a run.
LimitReport limit_of_sequence(const SequenceGenerator& gen, int digits, const LimitPolicy& policy);

} // namespace pstirling
