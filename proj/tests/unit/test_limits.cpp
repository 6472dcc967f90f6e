#include "pstirling/errors.hpp"
#include "pstirling/exact_comb.hpp"
#include "pstirling/limits.hpp"
#include "pstirling/modular_comb.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pstirling;

namespace {

unsigned long upow(unsigned long p, unsigned long e) { return big_pow(p, e).get_ui(); }

} // namespace

TEST(ChanManna, Helpers) {
  EXPECT_EQ(r_p(3, 2), 15);
  EXPECT_EQ(r_p(0, 5), 1);
  EXPECT_EQ(chan_manna_digits(2, 5), 4);
  EXPECT_EQ(chan_manna_digits(3, 5), 5);
}

TEST(ChanManna, BinomialMatchesExactStirling) {
  ExactStirlingTable S(260);
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    for (unsigned long m = p == 2 ? 3 : 1; upow(p, m) <= 128; ++m) {
      for (unsigned long b = 1; upow(p, m) * b <= 130; ++b) {
        const unsigned long k = upow(p, m) * b;
        const int digits = chan_manna_digits(p, m);
        for (unsigned long n = k + 1; n <= 260; ++n) {
          const BigInt expected = S.at(n, k) % big_pow(p, digits);
          ASSERT_EQ(chan_manna_binomial(n, m, b, p, 20).residue(), expected) << p << ' ' << m << ' ' << b << ' ' << n;
        }
      }
    }
  }
}

TEST(ChanManna, Errors) {
  EXPECT_THROW(chan_manna_binomial(100, 2, 1, 2, 4), DomainError);
  EXPECT_THROW(chan_manna_binomial(100, 2, 0, 3, 4), DomainError);
  EXPECT_THROW(chan_manna_binomial(5, 2, 1, 3, 4), DomainError);
}

// Reference values from tests/oracle/oracle.py (explicit alternating sum).
TEST(StirlingModFast, OracleValues) {
  EXPECT_EQ(stirling_mod_fast(3 * upow(2, 20) + 5, 10, 1, 3, 2, 6).residue(), 11);
  EXPECT_EQ(stirling_mod_fast(2 * upow(3, 12) + 7, 6, 1, 2, 3, 5).residue(), 197);
  EXPECT_EQ(stirling_mod_fast(3 * upow(5, 9) + 11, 5, 2, 4, 5, 4).residue(), 508);
  EXPECT_EQ(stirling_mod_fast(upow(3, 15), 8, 1, 0, 3, 6).residue(), 460);
  EXPECT_EQ(stirling_mod_fast(upow(2, 20) + 2, 8, 3, 0, 2, 5).residue(), 0);
  EXPECT_EQ(stirling_mod_fast(upow(3, 9) + 1, 5, 2, 0, 3, 4).residue(), 0);
}

TEST(StirlingModFast, PrecisionIsCappedByTheLevel) {
  EXPECT_EQ(stirling_mod_fast(1000, 4, 1, 3, 2, 10).precision(), 3);
  EXPECT_EQ(stirling_mod_fast(1000, 4, 1, 3, 3, 10).precision(), 4);
  EXPECT_EQ(stirling_mod_fast(1000, 4, 0, 3, 3, 10).precision(), 10);
}

TEST(StirlingModFast, MatchesTriangle) {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    StirlingTable table(220, big_pow(p, 6));
    for (unsigned long e = p == 2 ? 3 : 1; upow(p, e) <= 200; ++e) {
      const int prec = std::min(6, chan_manna_digits(p, e));
      const unsigned long reduce = upow(p, static_cast<unsigned long>(prec));
      for (unsigned long b = 1; upow(p, e) * b <= 200; ++b) {
        for (unsigned long d = 0; d <= 12; ++d) {
          const unsigned long k = upow(p, e) * b + d;
          for (unsigned long n = k; n <= 220; n += 3) {
            ASSERT_EQ(stirling_mod_fast(n, e, b, d, p, 6).residue(), table.at(n, k) % reduce)
                << p << ' ' << e << ' ' << b << ' ' << d << ' ' << n;
          }
        }
      }
    }
  }
}

TEST(StirlingModFast, AgreesWithConvolutionForLargeArguments) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned long p = std::vector<unsigned long>{2, 3, 5, 7}[rng() % 4];
    const unsigned long e = (p == 2 ? 3 : 1) + rng() % 4;
    const unsigned long b = 1 + rng() % 4;
    const unsigned long d = rng() % 20;
    const BigInt n = big_pow(p, e) * b + d + rng() % 40000;
    EXPECT_EQ(stirling_mod_fast(n, e, b, d, p, 8), stirling_mod_convolution(n, e, b, d, p, 8))
        << p << ' ' << e << ' ' << b << ' ' << d << ' ' << n;
  }
}

TEST(StirlingModFast, Errors) {
  EXPECT_THROW(stirling_mod_fast(10, 3, 2, 0, 2, 4), DomainError);
  EXPECT_THROW(stirling_mod_fast(1000, 2, 1, 1, 2, 4), DomainError);
  EXPECT_THROW(stirling_mod_fast(10000, 3, 1, kSmallKBound + 1, 3, 2), ResourceCap);
  EXPECT_THROW(stirling_mod_convolution(BigInt(1) << 40, 3, 1, 2, 2, 2), ResourceCap);
}

TEST(StirlingStructured, NegativeOffsetsMatchExact) {
  ExactStirlingTable S(300);
  for (unsigned long p : {2UL, 3UL}) {
    for (unsigned long e = p == 2 ? 3 : 2; upow(p, e) <= 64; ++e) {
      const unsigned long k0 = upow(p, e);
      const int prec = chan_manna_digits(p, e);
      for (long d = -4; d <= -1; ++d) {
        for (unsigned long n = k0 - 6; n <= 250; n += 5) {
          const unsigned long k = k0 + d;
          const BigInt expected = S.at(n, k) % big_pow(p, prec);
          ASSERT_EQ(stirling_structured(n, e, 1, d, p, 10).residue(), expected) << p << ' ' << e << ' ' << d << ' ' << n;
        }
      }
    }
  }
}

TEST(StirlingStructured, Boundaries) {
  EXPECT_TRUE(stirling_structured(5, 3, 1, 0, 2, 4).is_zero());
  EXPECT_EQ(stirling_structured(9, 3, 1, 1, 2, 4).residue(), 1);
  EXPECT_TRUE(stirling_structured(9, 3, 0, -1, 2, 4).is_zero());
  EXPECT_EQ(stirling_structured(20, 3, 0, 4, 2, 6).residue(), BigInt(stirling2_exact(20, 4) % 64));
}

namespace {

struct LimitCase {
  unsigned long p;
  long a, b, c, d;
  int digits;
  long expected;
  bool has_closed;
};

// Reference values from tests/oracle/oracle.py: exact S(p^e a + c, p^e b + d) for
// growing e, stable over the last three or more levels.
const LimitCase kLimitCases[] = {
    {2, 2, 1, 0, 0, 6, 37, true},   {2, 3, 1, 0, 0, 6, 9, true},   {3, 3, 1, 0, 0, 5, 55, true},
    {3, 2, 1, 0, 0, 5, 0, true},    {2, 2, 1, -2, -3, 6, 47, true}, {3, 3, 1, 1, 2, 4, 0, true},
    {2, 3, 1, 2, 1, 5, 13, true},   {3, 3, 1, -1, 2, 4, 18, true}, {3, 2, 1, 0, 1, 4, 53, false},
    {3, 2, 1, 1, 2, 4, 56, false},
};

} // namespace

TEST(Limits, EmpiricalMatchesOracle) {
  for (const auto& t : kLimitCases) {
    const LimitReport r = stirling_limit_empirical({t.p, t.a, t.b, t.c, t.d, t.digits});
    EXPECT_TRUE(r.stabilized);
    EXPECT_EQ(r.value.residue(), t.expected) << t.p << ' ' << t.a << ' ' << t.b << ' ' << t.c << ' ' << t.d;
    EXPECT_EQ(r.value.precision(), t.digits);
  }
}

TEST(Limits, ClosedFormMatchesOracle) {
  for (const auto& t : kLimitCases) {
    const ClosedForm cf = stirling_limit_closed({t.p, t.a, t.b, t.c, t.d, t.digits});
    if (!t.has_closed) {
      EXPECT_EQ(cf.rule, ClosedFormRule::unsupported);
      EXPECT_FALSE(cf.value);
      EXPECT_FALSE(cf.note.empty());
      continue;
    }
    ASSERT_TRUE(cf.value);
    EXPECT_EQ(cf.value->residue(), t.expected) << t.p << ' ' << t.a << ' ' << t.b << ' ' << t.c << ' ' << t.d;
  }
}

TEST(Limits, ClosedFormRules) {
  auto rule = [](unsigned long p, long a, long b, long c, long d) {
    return stirling_limit_closed({p, a, b, c, d, 4}).rule;
  };
  EXPECT_EQ(rule(3, 3, 1, 0, 0), ClosedFormRule::base_binomial);
  EXPECT_EQ(rule(3, 3, 1, 5, 0), ClosedFormRule::zero);
  EXPECT_EQ(rule(3, 3, 1, 2, -1), ClosedFormRule::zero);
  EXPECT_EQ(rule(3, 3, 1, -2, -1), ClosedFormRule::first_kind_scaling);
  EXPECT_EQ(rule(3, 3, 1, 3, 2), ClosedFormRule::forward_polynomial);
  EXPECT_EQ(rule(3, 3, 1, -1, 2), ClosedFormRule::backward_polynomial);
  EXPECT_EQ(rule(3, 0, 0, 5, 2), ClosedFormRule::constant);
  EXPECT_EQ(rule(3, 2, 1, 0, 1), ClosedFormRule::unsupported);
  EXPECT_EQ(rule(3, 2, 0, 0, 1), ClosedFormRule::unsupported);
  EXPECT_EQ(to_string(ClosedFormRule::first_kind_scaling), "first_kind_scaling");
}

TEST(Limits, BaseValues) {
  EXPECT_EQ(stirling_limit_base(3, 2, 1, 8).residue(), 0);
  EXPECT_EQ(stirling_limit_base(2, 1, 1, 8).residue(), 1);
  EXPECT_EQ(stirling_limit_base(2, 2, 1, 6).residue(), 37);
  EXPECT_EQ(stirling_limit_base(3, 0, 0, 3).residue(), 1);
}

TEST(Limits, ConstantSequenceForAZero) {
  const ClosedForm cf = stirling_limit_closed({5, 0, 0, 7, 3, 4});
  EXPECT_EQ(cf.value->residue(), BigInt(stirling2_exact(7, 3) % 625));
  EXPECT_EQ(stirling_limit_empirical({5, 0, 0, 7, 3, 4}).value, *cf.value);
}

TEST(Limits, ValidatesParameters) {
  EXPECT_THROW(stirling_limit_empirical({4, 1, 1, 0, 0, 4}), DomainError);
  EXPECT_THROW(stirling_limit_empirical({3, 1, 2, 0, 0, 4}), DomainError);
  EXPECT_THROW(stirling_limit_closed({3, 1, -1, 0, 0, 4}), DomainError);
  EXPECT_THROW(stirling_limit_empirical({3, 1, 1, 0, 0, 0}), DomainError);
  EXPECT_THROW(binom_limit_empirical({3, 1, 2, 0, 0, 4}), DomainError);
}

TEST(Limits, BinomialLimit) {
  // C(p^e, 1) = p^e -> 0; C(2 p^e, p^e) = 2 mod p by Lucas
  EXPECT_TRUE(binom_limit_empirical({3, 1, 0, 0, 1, 5}).value.is_zero());
  EXPECT_EQ(binom_limit_empirical({5, 2, 1, 0, 0, 5}).value.reduce(1).residue(), 2);
}

TEST(Limits, ExistenceCaseHasGrowingAgreement) {
  const LimitReport r = stirling_limit_empirical({3, 2, 1, 0, 1, 6}, LimitPolicy{2, 14, 3});
  ASSERT_TRUE(r.stabilized);
  const auto agree = r.agreement_valuations();
  EXPECT_TRUE(std::is_sorted(agree.begin(), agree.end()));
  EXPECT_EQ(r.value.reduce(4).residue(), 53);
}

// Reference values from tests/oracle/oracle.py.
TEST(FixedK, OracleValues) {
  EXPECT_EQ(stirling_fixed_k_at_padic(PadicInt(3, 5, 100), 4, 1), PadicInt(3, 5, 225));
  EXPECT_EQ(stirling_fixed_k_at_padic(PadicInt(2, 6, 37), 3, 0), PadicInt(2, 6, 41));
  EXPECT_EQ(stirling_fixed_k_at_padic(PadicInt(5, 4, 77), 7, 2), PadicInt(5, 4, 130));
  EXPECT_EQ(stirling_fixed_k_at_padic(PadicInt(5, 4, 77), 7, 2, 2), PadicInt(5, 2, 130));
}

TEST(FixedK, SmallRepresentativesAreLifted) {
  // S(x,2) = 2^(x-1) - 1, so f(x) = -1 for every 2-adic x; the representative 3 itself gives 3
  EXPECT_EQ(stirling_fixed_k_at_padic(PadicInt(2, 4, 3), 2, 0), PadicInt(2, 5, 31));
  EXPECT_EQ(stirling_fixed_k_at_padic(PadicInt(2, 4, 0), 2, 0), PadicInt(2, 5, 31));
}

TEST(FixedK, Errors) {
  EXPECT_THROW(stirling_fixed_k_at_padic(PadicInt(3, 2, 1), 0, 0), DomainError);
  EXPECT_THROW(stirling_fixed_k_at_padic(PadicInt(3, 2, 1), 2, 2), DomainError);
  EXPECT_THROW(stirling_fixed_k_at_padic(PadicInt(2, 1, 1), 9, 0), PrecisionUnachievable);
  EXPECT_THROW(stirling_fixed_k_at_padic(PadicInt(3, 2, 1), 2, 0, 4), PrecisionUnachievable);
}
