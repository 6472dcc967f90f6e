#pragma once

#include "pstirling/padic.hpp"
#include "pstirling/partial_stirling.hpp"

#include <optional>
#include <string>

namespace pstirling {

/// Parameters of S(p^e a + c, p^e b + d) as e grows, known to N digits.
struct LimitSpec {
  unsigned long p = 2;
  long a = 0;
  long b = 0;
  long c = 0;
  long d = 0;
  int digits = 8;

  /// Throws DomainError unless p is prime, 0 <= b <= a and digits >= 1.
  void validate() const;
};

/// Parameters of C(p^e alpha + c, p^e beta + d) as e grows.
struct BinomLimitSpec {
  unsigned long p = 2;
  long alpha = 0;
  long beta = 0;
  long c = 0;
  long d = 0;
  int digits = 8;

  void validate() const;
};

/// (p^(e+1) - 1) / (p - 1).
BigInt r_p(unsigned long e, unsigned long p);

/// Digits certified by the Chan-Manna congruences at level e: e for odd p, e - 1 for p = 2.
int chan_manna_digits(unsigned long p, unsigned long e);

/// S(n, p^m b) mod p^min(N, m - [p=2]) by the Chan-Manna binomial:
///   p = 2:  C(n/2 - 2^(m-2) b - 1, n/2 - 2^(m-1) b) for even n, else 0
///   p odd:  C((n - p^(m-1) b)/(p-1) - 1, (n - p^m b)/(p-1)) for n = b mod (p-1), else 0.
/// Needs b >= 1, n >= p^m b, m >= 1 (m >= 3 for p = 2).
PadicInt chan_manna_binomial(const BigInt& n, unsigned long m, unsigned long b, unsigned long p, int digits);

/// S(n, p^e b + d) mod p^N' with N' = min(N, e - [p=2]).
///
/// Evaluates the convolution sum_j S(p^e b + (p-1)j, p^e b) S(n - p^e b - (p-1)j, d)
/// in regrouped form: the second factor is expanded as an alternating sum of
/// powers i^m, the sum over j collapses per i into binomials
/// sum_l (i^q - 1)^l C(B + T, B + l), which vanish p-adically after N' + nu_p(d!)
/// terms. Cost is O(d * N) binomials regardless of the size of n.
/// b = 0 delegates to stirling2_small_k_mod; d = 0 is a single Chan-Manna binomial.
/// Needs n >= p^e b + d and e >= 3 when p = 2 and b > 0.
PadicInt stirling_mod_fast(const BigInt& n, unsigned long e, unsigned long b, unsigned long d, unsigned long p,
                           int digits);

/// Literal term-by-term evaluation of the same convolution (cost linear in n).
/// Reference implementation for cross-checking stirling_mod_fast.
PadicInt stirling_mod_convolution(const BigInt& n, unsigned long e, unsigned long b, unsigned long d,
                                  unsigned long p, int digits);

/// S(n, p^e b + d) for any signed d: returns 0 when n < k or k < 0 and walks the
/// recurrence S(n-1,k-1) = S(n,k) - k S(n-1,k) down from column d = 0 when d < 0.
PadicInt stirling_structured(const BigInt& n, unsigned long e, unsigned long b, long d, unsigned long p,
                             int digits);

/// Limit of S(p^e a + c, p^e b + d) mod p^N. Policy defaults to LimitPolicy::defaults(N).
LimitReport stirling_limit_empirical(const LimitSpec& spec, std::optional<LimitPolicy> policy = std::nullopt);

/// Limit of C(p^e alpha + c, p^e beta + d) mod p^N.
LimitReport binom_limit_empirical(const BinomLimitSpec& spec, std::optional<LimitPolicy> policy = std::nullopt);

/// S(p^oo a, p^oo b) from its binomial expression; 0 when a != b mod (p-1).
/// Throws NonConvergence when the binomial limit does not stabilize.
PadicInt stirling_limit_base(unsigned long p, long a, long b, int digits);

enum class ClosedFormRule {
  base_binomial,        // d = 0, c = 0
  zero,                 // d = 0, c != 0 or d < 0, c >= 0
  first_kind_scaling,   // c < 0, d < 0
  forward_polynomial,   // d >= 1, c >= d - 1
  backward_polynomial,  // d >= 1, c < d - 1
  constant,             // a = b = 0: the sequence is constant
  unsupported,
};

std::string to_string(ClosedFormRule rule);

struct ClosedForm {
  ClosedFormRule rule = ClosedFormRule::unsupported;
  std::optional<PadicInt> value;  // empty iff rule == unsupported
  std::optional<TPoly> poly;      // the ratio to S(p^oo a, p^oo b) for polynomial rules
  std::string note;
};

/// Closed-form value of S(p^oo a + c, p^oo b + d) where one is known:
/// d <= 0 always, d >= 1 when a = b mod (p-1) and b >= 1.
ClosedForm stirling_limit_closed(const LimitSpec& spec);

/// f_{i,k}(x) = S(i + x(p-1), k) for a p-adic integer x known to M digits,
/// to min(N, M + 2 - ceil(log_p k)) digits (all achievable digits when N is empty).
/// Throws PrecisionUnachievable when fewer than one digit (or fewer than the
/// requested N) can be certified.
PadicInt stirling_fixed_k_at_padic(const PadicInt& x, unsigned long k, unsigned long i,
                                   std::optional<int> digits = std::nullopt);

} // namespace pstirling
