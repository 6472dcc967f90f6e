#include "pstirling/limits.hpp"

#include "pstirling/errors.hpp"
#include "pstirling/exact_comb.hpp"
#include "pstirling/modular_comb.hpp"

#include <algorithm>
#include <vector>

namespace pstirling {

namespace {

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
}

BigInt pe_times(unsigned long p, unsigned long e, long b) { return big_pow(p, e) * b; }

// Residue of C(n,k) mod p^P as a plain integer. Small n is cheaper exactly,
// since p^P is often far above the unit-factorial table cap.
BigInt binom_residue(const BigInt& n, const BigInt& k, unsigned long p, int work) {
  if (n <= 4096) {
    if (k < 0 || k > n) return 0;
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), n.get_ui(), k.get_ui());
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), big_pow(p, static_cast<unsigned long>(work)).get_mpz_t());
    return c;
  }
  return binomial_mod_prime_power(n, k, p, work).residue();
}

// Exact division of an integer known mod p^(N+v) by d! = p^v * unit.
PadicInt divide_by_factorial(BigInt sum, unsigned long d, unsigned long p, int digits, long v) {
  const BigInt work_mod = big_pow(p, static_cast<unsigned long>(digits + v));
  mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), work_mod.get_mpz_t());
  const BigInt pv = big_pow(p, static_cast<unsigned long>(v));
  if (!mpz_divisible_p(sum.get_mpz_t(), pv.get_mpz_t())) {
    throw NonIntegralSum("regrouped Stirling sum is not divisible by " + std::to_string(d) + "!");
  }
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), d);
  const BigInt unit = u_p(fact, p);
  const BigInt out_mod = big_pow(p, static_cast<unsigned long>(digits));
  BigInt inv, q;
  mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), out_mod.get_mpz_t());
  mpz_divexact(q.get_mpz_t(), sum.get_mpz_t(), pv.get_mpz_t());
  return {p, digits, BigInt(q * inv)};
}

void require_level(unsigned long p, unsigned long e) {
  if (p == 2 ? e < 3 : e < 1) {
    throw DomainError("Chan-Manna congruences need e >= " + std::string(p == 2 ? "3 for p = 2" : "1"));
  }
}

} // namespace

void LimitSpec::validate() const {
  require_prime(p);
  if (b < 0 || b > a) throw DomainError("limit parameters need 0 <= b <= a");
  if (digits < 1) throw DomainError("digits must be >= 1");
}

void BinomLimitSpec::validate() const {
  require_prime(p);
  if (beta < 0 || beta > alpha) throw DomainError("binomial limit parameters need 0 <= beta <= alpha");
  if (digits < 1) throw DomainError("digits must be >= 1");
}

BigInt r_p(unsigned long e, unsigned long p) {
  require_prime(p);
  return BigInt((big_pow(p, e + 1) - 1) / (p - 1));
}

int chan_manna_digits(unsigned long p, unsigned long e) { return static_cast<int>(e) - (p == 2 ? 1 : 0); }

PadicInt chan_manna_binomial(const BigInt& n, unsigned long m, unsigned long b, unsigned long p, int digits) {
  require_prime(p);
  require_level(p, m);
  if (b < 1) throw DomainError("chan_manna_binomial needs b >= 1");
  const BigInt k = pe_times(p, m, static_cast<long>(b));
  if (n < k) throw DomainError("chan_manna_binomial needs n >= p^m b");
  const int prec = std::min(digits, chan_manna_digits(p, m));
  if (prec < 1) throw DomainError("digits must be >= 1");

  if (p == 2) {
    if (mpz_odd_p(n.get_mpz_t())) return PadicInt::zero(p, prec);
    const BigInt half = n / 2;
    const BigInt top = half - pe_times(2, m - 2, static_cast<long>(b)) - 1;
    const BigInt bottom = half - pe_times(2, m - 1, static_cast<long>(b));
    return binomial_mod_prime_power(top, bottom, p, prec);
  }
  const BigInt shifted = n - b;
  if (!mpz_divisible_ui_p(shifted.get_mpz_t(), p - 1)) return PadicInt::zero(p, prec);
  const BigInt top = (n - pe_times(p, m - 1, static_cast<long>(b))) / (p - 1) - 1;
  const BigInt bottom = (n - k) / (p - 1);
  return binomial_mod_prime_power(top, bottom, p, prec);
}

PadicInt stirling_mod_fast(const BigInt& n, unsigned long e, unsigned long b, unsigned long d, unsigned long p,
                           int digits) {
  require_prime(p);
  if (digits < 1) throw DomainError("digits must be >= 1");
  const BigInt k0 = pe_times(p, e, static_cast<long>(b));
  if (n < k0 + d) throw DomainError("stirling_mod_fast needs n >= p^e b + d");
  if (b == 0) return stirling2_small_k_mod(n, d, p, digits);
  require_level(p, e);
  const int prec = std::min(digits, chan_manna_digits(p, e));
  if (d == 0) return chan_manna_binomial(n, e, b, p, prec);
  if (d > kSmallKBound) throw ResourceCap("stirling_mod_fast capped at d <= " + std::to_string(kSmallKBound));

  // sum over t of C(B + t - 1, t) * S(m0 - q t, d), with S(m, d) written as
  // (1/d!) sum_i (-1)^(d-i) C(d,i) i^m
  const unsigned long q = p == 2 ? 2 : p - 1;
  const BigInt block = p == 2 ? pe_times(2, e - 2, static_cast<long>(b)) : pe_times(p, e - 1, static_cast<long>(b));
  const BigInt m0 = n - k0;
  const BigInt t_max = m0 / q;
  const unsigned long rem = BigInt(m0 - t_max * q).get_ui();

  const long v = legendre_nu_factorial(d, p).get_si();
  const int work = prec + static_cast<int>(v);
  const BigInt work_mod = big_pow(p, static_cast<unsigned long>(work));

  BigInt total = 0;
  BigInt coeff;
  for (unsigned long i = 0; i <= d; ++i) {
    BigInt g = 0;
    if (i == 0) {
      // only the term with exponent zero survives (0^0 = 1)
      if (rem == 0) g = binom_residue(block + t_max - 1, t_max, p, work);
    } else if (i % p == 0) {
      // i^m vanishes mod p^work once m >= work; keep the tail where m = rem + q s is small
      for (unsigned long s = 0; rem + q * s < static_cast<unsigned long>(work) && s <= t_max; ++s) {
        const BigInt t = t_max - s;
        g += binom_residue(block + t - 1, t, p, work) * pow_mod(i, rem + q * s, p, work);
      }
    } else {
      // i^(m0 - q t) = i^rem (1 + u)^(T - t) with u = i^q - 1, and
      // sum_t C(B + t - 1, t) C(T - t, l) = C(B + T, B + l)
      BigInt u;
      mpz_ui_pow_ui(u.get_mpz_t(), i, q);
      u -= 1;
      const long nu_u = u == 0 ? static_cast<long>(work) : *p_valuation(u, p);
      const BigInt l_cap = (work - 1) / nu_u;
      const BigInt l_max = std::min(l_cap, t_max);
      BigInt u_pow = 1;
      for (unsigned long l = 0; l <= l_max.get_ui(); ++l) {
        g += u_pow * binom_residue(block + t_max, block + l, p, work);
        u_pow = u_pow * u % work_mod;
      }
      g *= pow_mod(i, rem, p, work);
    }
    g %= work_mod;
    mpz_bin_uiui(coeff.get_mpz_t(), d, i);
    if ((d - i) % 2 == 0) {
      total += coeff * g;
    } else {
      total -= coeff * g;
    }
  }
  return divide_by_factorial(std::move(total), d, p, prec, v);
}

PadicInt stirling_mod_convolution(const BigInt& n, unsigned long e, unsigned long b, unsigned long d,
                                  unsigned long p, int digits) {
  require_prime(p);
  if (digits < 1) throw DomainError("digits must be >= 1");
  const BigInt k0 = pe_times(p, e, static_cast<long>(b));
  if (n < k0 + d) throw DomainError("stirling_mod_convolution needs n >= p^e b + d");
  if (b == 0) return stirling2_small_k_mod(n, d, p, digits);
  require_level(p, e);
  const int prec = std::min(digits, chan_manna_digits(p, e));

  const BigInt terms = (n - k0 - d) / (p - 1) + 1;
  if (terms > 10'000'000) throw ResourceCap("convolution needs more than 10^7 terms");
  PadicInt total = PadicInt::zero(p, prec);
  for (unsigned long j = 0; j < terms.get_ui(); ++j) {
    const BigInt top = k0 + (p - 1) * j;
    const PadicInt head = chan_manna_binomial(top, e, b, p, prec);
    if (head.is_zero()) continue;
    total = total + head * stirling2_small_k_mod(BigInt(n - top), d, p, prec);
  }
  return total;
}

PadicInt stirling_structured(const BigInt& n, unsigned long e, unsigned long b, long d, unsigned long p,
                             int digits) {
  require_prime(p);
  if (digits < 1) throw DomainError("digits must be >= 1");
  const BigInt k0 = pe_times(p, e, static_cast<long>(b));
  const BigInt k = k0 + d;
  if (k < 0 || n < 0 || n < k) return PadicInt::zero(p, digits);
  if (n == k) return PadicInt::one(p, digits);
  if (b == 0) return stirling2_small_k_mod(n, static_cast<unsigned long>(d), p, digits);
  if (d >= 0) return stirling_mod_fast(n, e, b, static_cast<unsigned long>(d), p, digits);

  require_level(p, e);
  const int prec = std::min(digits, chan_manna_digits(p, e));
  const unsigned long steps = static_cast<unsigned long>(-d);
  // column[r] = S(n + r, k0 - s) after s steps
  std::vector<PadicInt> column;
  column.reserve(steps + 1);
  for (unsigned long r = 0; r <= steps; ++r) {
    const BigInt top = n + r;
    if (top < k0) {
      column.push_back(PadicInt::zero(p, prec));
    } else if (top == k0) {
      column.push_back(PadicInt::one(p, prec));
    } else {
      column.push_back(chan_manna_binomial(top, e, b, p, prec));
    }
  }
  for (unsigned long s = 1; s <= steps; ++s) {
    const PadicInt multiplier = padic_from_integer(BigInt(k0 - (s - 1)), p, prec);
    for (unsigned long r = 0; r + s <= steps; ++r) {
      column[r] = column[r + 1] - multiplier * column[r];
    }
  }
  return column[0];
}

LimitReport stirling_limit_empirical(const LimitSpec& spec, std::optional<LimitPolicy> policy) {
  spec.validate();
  const LimitPolicy pol = policy.value_or(LimitPolicy::defaults(spec.digits));
  auto gen = [&spec](int e) {
    const auto ue = static_cast<unsigned long>(e);
    const BigInt n = pe_times(spec.p, ue, spec.a) + spec.c;
    return stirling_structured(n, ue, static_cast<unsigned long>(spec.b), spec.d, spec.p, spec.digits);
  };
  return limit_of_sequence(gen, spec.digits, pol);
}

LimitReport binom_limit_empirical(const BinomLimitSpec& spec, std::optional<LimitPolicy> policy) {
  spec.validate();
  const LimitPolicy pol = policy.value_or(LimitPolicy::defaults(spec.digits));
  auto gen = [&spec](int e) {
    const auto ue = static_cast<unsigned long>(e);
    const BigInt n = pe_times(spec.p, ue, spec.alpha) + spec.c;
    const BigInt k = pe_times(spec.p, ue, spec.beta) + spec.d;
    if (n < 0) throw DomainError("binomial limit with a negative top argument");
    if (k < 0 || k > n) return PadicInt::zero(spec.p, spec.digits);
    return binomial_mod_prime_power(n, k, spec.p, spec.digits);
  };
  return limit_of_sequence(gen, spec.digits, pol);
}

PadicInt stirling_limit_base(unsigned long p, long a, long b, int digits) {
  LimitSpec{p, a, b, 0, 0, digits}.validate();
  const long q = static_cast<long>(p - 1);
  if ((a - b) % q != 0) return PadicInt::zero(p, digits);
  if (a == b) return PadicInt::one(p, digits);
  const BinomLimitSpec binom{p, (static_cast<long>(p) * a - b) / q, static_cast<long>(p) * (a - b) / q, -1, 0, digits};
  const LimitReport report = binom_limit_empirical(binom);
  if (!report.stabilized) {
    throw NonConvergence("binomial limit for S(p^oo " + std::to_string(a) + ", p^oo " + std::to_string(b) +
                         ") did not stabilize by e = " + std::to_string(report.e_used));
  }
  return report.value;
}

std::string to_string(ClosedFormRule rule) {
  switch (rule) {
    case ClosedFormRule::base_binomial: return "base_binomial";
    case ClosedFormRule::zero: return "zero";
    case ClosedFormRule::first_kind_scaling: return "first_kind_scaling";
    case ClosedFormRule::forward_polynomial: return "forward_polynomial";
    case ClosedFormRule::backward_polynomial: return "backward_polynomial";
    case ClosedFormRule::constant: return "constant";
    case ClosedFormRule::unsupported: return "unsupported";
  }
  return "unknown";
}

ClosedForm stirling_limit_closed(const LimitSpec& spec) {
  spec.validate();
  const auto [p, a, b, c, d, digits] = spec;
  ClosedForm out;

  if (a == 0) {
    out.rule = ClosedFormRule::constant;
    const BigInt s = (c < 0 || d < 0) ? BigInt(0)
                                      : stirling2_exact(static_cast<unsigned long>(c), static_cast<unsigned long>(d));
    out.value = padic_from_integer(s, p, digits);
    return out;
  }
  if (d == 0 && c == 0) {
    out.rule = ClosedFormRule::base_binomial;
    out.value = stirling_limit_base(p, a, b, digits);
    return out;
  }
  if (d == 0 || (d < 0 && c >= 0)) {
    out.rule = ClosedFormRule::zero;
    out.value = PadicInt::zero(p, digits);
    return out;
  }
  if (d < 0) {
    out.rule = ClosedFormRule::first_kind_scaling;
    const BigInt s = stirling1_unsigned_exact(static_cast<unsigned long>(-d), static_cast<unsigned long>(-c));
    out.value = padic_from_integer(s, p, digits) * stirling_limit_base(p, a, b, digits);
    return out;
  }
  if ((a - b) % static_cast<long>(p - 1) != 0) {
    out.note = "no closed form for d >= 1 when a != b mod (p-1)";
    return out;
  }
  if (b == 0) {
    out.note = "no closed form for d >= 1 when b = 0";
    return out;
  }

  if (c >= d - 1) {
    out.rule = ClosedFormRule::forward_polynomial;
    out.poly = tpoly_forward(c, d);
  } else {
    out.rule = ClosedFormRule::backward_polynomial;
    out.poly = tpoly_backward(static_cast<unsigned long>(d - c), static_cast<unsigned long>(d));
  }
  const Rational ratio = tpoly_eval_exact(*out.poly, a, b, p);
  if (ratio == 0) {
    out.value = PadicInt::zero(p, digits);
    return out;
  }
  const long shift = std::max(0L, -*p_valuation(ratio, p));
  const PadicInt base = stirling_limit_base(p, a, b, digits + static_cast<int>(shift));
  out.value = scale(base, ratio);
  return out;
}

PadicInt stirling_fixed_k_at_padic(const PadicInt& x, unsigned long k, unsigned long i, std::optional<int> digits) {
  const unsigned long p = x.prime();
  if (k < 1) throw DomainError("stirling_fixed_k_at_padic needs k >= 1");
  if (p > 2 ? i > p - 2 : i != 0) throw DomainError("residue class i must lie in [0, p-2]");
  const int achievable = x.precision() + 2 - static_cast<int>(ceil_log_p(k, p));
  if (achievable < 1) throw PrecisionUnachievable("no digits of f_{i,k} are determined at this precision");
  if (digits && *digits > achievable) {
    throw PrecisionUnachievable("at most " + std::to_string(achievable) + " digits are determined");
  }
  const int out = digits.value_or(achievable);
  if (out < 1) throw DomainError("digits must be >= 1");

  // integer representative m = x mod p^M, lifted until i + m(p-1) > k and >= M + 2;
  // below that the congruence fails (S(x,2) = 2^(x-1) - 1 for p = 2)
  const BigInt step = x.modulus();
  BigInt m = x.residue();
  BigInt arg = i + m * (p - 1);
  while (arg <= k || arg < x.precision() + 2) {
    m += step;
    arg = i + m * (p - 1);
  }
  return stirling2_small_k_mod(arg, k, p, out);
}

} // namespace pstirling
