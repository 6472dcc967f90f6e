#include "pstirling/verification.hpp"

#include "pstirling/errors.hpp"
#include "pstirling/exact_comb.hpp"
#include "pstirling/limits.hpp"
#include "pstirling/modular_comb.hpp"
#include "pstirling/padic.hpp"
#include "pstirling/partial_stirling.hpp"

#include <algorithm>
#include <climits>
#include <iomanip>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

namespace pstirling {

namespace {

struct Field {
  Field(const char* n, long v) : name(n), value(std::to_string(v)) {}
  Field(const char* n, unsigned long v) : name(n), value(std::to_string(v)) {}
  Field(const char* n, int v) : name(n), value(std::to_string(v)) {}
  Field(const char* n, const BigInt& v) : name(n), value(v.get_str()) {}
  Field(const char* n, std::string v) : name(n), value(std::move(v)) {}
  const char* name;
  std::string value;
};

std::string tuple(std::initializer_list<Field> fields) {
  std::string out;
  for (const auto& f : fields) {
    if (!out.empty()) out += ' ';
    out += f.name;
    out += '=';
    out += f.value;
  }
  return out;
}

class Recorder {
public:
  Recorder(std::string suite, const SamplingPlan& plan, bool bound) {
    report_.suite = std::move(suite);
    report_.seed = plan.seed;
    bound_ = bound;
  }

  void trial() { ++report_.trials; }
  void count(const std::string& key, long by = 1) { report_.counters[key] += by; }
  void fail(std::string sample) {
    ++report_.failures;
    samples_.push_back(std::move(sample));
  }
  void slack(long s) { min_slack_ = min_slack_ ? std::min(*min_slack_, s) : s; }

  VerificationReport finish() {
    std::sort(samples_.begin(), samples_.end());
    samples_.erase(std::unique(samples_.begin(), samples_.end()), samples_.end());
    if (samples_.size() > VerificationReport::kMaxSamples) samples_.resize(VerificationReport::kMaxSamples);
    report_.samples = std::move(samples_);
    // a bound suite whose every case was vacuous still reports a slack
    if (bound_) report_.min_slack = min_slack_.value_or(0);
    return std::move(report_);
  }

private:
  VerificationReport report_;
  std::vector<std::string> samples_;
  std::optional<long> min_slack_;
  bool bound_ = false;
};

class Sampler {
public:
  explicit Sampler(const SamplingPlan& plan) : rng_(plan.seed), primes_(plan.primes) {
    if (primes_.empty()) throw DomainError("sampling plan has no primes");
    for (unsigned long p : primes_) {
      if (!is_prime(p)) throw DomainError("sampling plan lists a non-prime: " + std::to_string(p));
    }
    if (plan.trials < 0) throw DomainError("trial count must be >= 0");
  }

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  unsigned long prime() { return primes_[static_cast<std::size_t>(uniform(0, static_cast<long>(primes_.size()) - 1))]; }

private:
  std::mt19937_64 rng_;
  std::vector<unsigned long> primes_;
};

const ExactStirlingTable& exact_table(unsigned long n_max) {
  static std::mutex mutex;
  static std::map<unsigned long, std::unique_ptr<ExactStirlingTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[n_max];
  if (!slot) slot = std::make_unique<ExactStirlingTable>(n_max);
  return *slot;
}

unsigned long ipow(unsigned long p, unsigned long e) { return big_pow(p, e).get_ui(); }

bool congruent(const BigInt& x, const BigInt& y, const BigInt& modulus) {
  return mpz_congruent_p(x.get_mpz_t(), y.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

// Largest m with p^m <= bound (0 when p > bound).
unsigned long max_exponent(unsigned long p, unsigned long bound) {
  unsigned long m = 0;
  while (big_pow(p, m + 1) <= bound) ++m;
  return m;
}

long nu(const BigInt& n, unsigned long p) { return *p_valuation(n, p); }
long nu(const Rational& q, unsigned long p) { return *p_valuation(q, p); }

} // namespace

VerificationReport check_cm_42(const SamplingPlan& plan) {
  Recorder rec("cm_42", plan, false);
  Sampler rng(plan);
  const auto& S = exact_table(plan.size_bound);
  for (int trial = 0; trial < plan.trials; ++trial) {
    const unsigned long p = rng.prime();
    const unsigned long m_lo = p == 2 ? 3 : 1;
    const unsigned long m_hi = max_exponent(p, plan.size_bound - 1);
    if (m_hi < m_lo) {
      rec.count("skipped_too_large");
      continue;
    }
    const unsigned long m = rng.uniform(m_lo, m_hi);
    const unsigned long pm = ipow(p, m);
    const unsigned long b = rng.uniform(1, (plan.size_bound - 1) / pm);
    const unsigned long n = rng.uniform(pm * b + 1, plan.size_bound);
    rec.trial();

    BigInt expected = 0;
    if (p == 2) {
      if (n % 2 == 0) {
        rec.count("binomial_case");
        expected = binomial_exact(BigInt(n / 2 - ipow(2, m - 2) * b - 1), n / 2 - ipow(2, m - 1) * b);
      } else {
        rec.count("zero_case");
      }
    } else if ((n - b) % (p - 1) == 0) {
      rec.count("binomial_case");
      expected = binomial_exact(BigInt((n - ipow(p, m - 1) * b) / (p - 1) - 1), (n - pm * b) / (p - 1));
    } else {
      rec.count("zero_case");
    }
    const unsigned long digits = p == 2 ? m - 1 : m;
    if (!congruent(S.at(n, pm * b), expected, big_pow(p, digits))) {
      rec.fail(tuple({{"p", p}, {"m", m}, {"b", b}, {"n", n}}));
    }
  }
  return rec.finish();
}

VerificationReport check_cm_43(const SamplingPlan& plan) {
  Recorder rec("cm_43", plan, false);
  Sampler rng(plan);
  const auto& S = exact_table(plan.size_bound);
  for (int trial = 0; trial < plan.trials; ++trial) {
    const unsigned long p = rng.prime();
    const unsigned long e_hi = max_exponent(p, plan.size_bound);
    if (e_hi < 1) {
      rec.count("skipped_too_large");
      continue;
    }
    const unsigned long e = rng.uniform(1, e_hi);
    const unsigned long pe = ipow(p, e);
    const unsigned long b = rng.uniform(1, plan.size_bound / pe);
    const unsigned long d = rng.uniform(0, std::min<long>(12, plan.size_bound - pe * b));
    const unsigned long n = rng.uniform(pe * b + d, plan.size_bound);
    rec.trial();

    BigInt rhs = 0;
    long terms = 0;
    for (unsigned long j = 0; pe * b + (p - 1) * j + d <= n; ++j) {
      rhs += S.at(pe * b + (p - 1) * j, pe * b) * S.at(n - pe * b - (p - 1) * j, d);
      ++terms;
    }
    if (terms == 1) rec.count("single_term");
    if (!congruent(S.at(n, pe * b + d), rhs, big_pow(p, e))) {
      rec.fail(tuple({{"p", p}, {"e", e}, {"b", b}, {"d", d}, {"n", n}}));
    }
  }
  return rec.finish();
}

VerificationReport check_tdiff(const SamplingPlan& plan) {
  Recorder rec("tdiff", plan, true);
  Sampler rng(plan);
  for (int trial = 0; trial < plan.trials; ++trial) {
    const unsigned long p = rng.prime();
    const unsigned long k = rng.uniform(1, 60);
    const unsigned long d = rng.uniform(1, 20);
    rec.trial();
    const Rational diff = t_partial_exact((p - 1) * k + d - 1, d, p) - t_partial_exact(d - 1, d, p);
    if (diff == 0) {
      rec.count("zero_difference");
      continue;
    }
    const long lhs = nu(diff, p);
    const long rhs = nu_p(k, p) - lg_p(d, p);
    rec.slack(lhs - rhs);
    if (lhs < rhs) rec.fail(tuple({{"p", p}, {"k", k}, {"d", d}, {"lhs", lhs}, {"rhs", rhs}}));
  }
  return rec.finish();
}

VerificationReport check_plem(const SamplingPlan& plan) {
  Recorder rec("plem", plan, true);
  Sampler rng(plan);
  for (int trial = 0; trial < plan.trials; ++trial) {
    const unsigned long p = rng.prime();
    const unsigned long e = rng.uniform(1, p < 5 ? 6 : 4);
    const unsigned long b = rng.uniform(1, 4);
    const unsigned long amb = rng.uniform(1, 4);
    const BigInt j_max = r_p(e, p) * amb;
    const BigInt j = rng.uniform(0, j_max.get_si());
    rec.trial();
    const BigInt pe = big_pow(p, e);
    // lhs >= e - log_p(a-b+p) over the integers is lhs >= e - lg_p(a-b+p)
    const BigInt lhs = nu_binomial(pe * b + j - 1, j, p) + (pe * p - 1) * amb - (p - 1) * j;
    const long rhs = static_cast<long>(e) - lg_p(amb + p, p);
    const BigInt s = lhs - rhs;
    rec.slack(s.fits_slong_p() ? s.get_si() : LONG_MAX);
    if (s < 0) {
      rec.fail(tuple({{"p", p}, {"e", e}, {"a", b + amb}, {"b", b}, {"j", j}, {"lhs", lhs}, {"rhs", rhs}}));
    }
  }
  return rec.finish();
}

VerificationReport check_limlem(const SamplingPlan& plan) {
  Recorder rec("limlem", plan, true);
  Sampler rng(plan);
  for (int trial = 0; trial < plan.trials; ++trial) {
    const unsigned long p = rng.prime();
    const unsigned long alpha = rng.uniform(1, 12);
    const unsigned long b = rng.uniform(1, 6);
    const unsigned long ell = rng.uniform(0, 10);
    rec.trial();

    const unsigned long delta = (alpha - 1) % (p - 1) + 1;
    const unsigned long t = (alpha - delta) / (p - 1);
    unsigned long s = 0;
    while (BigInt(delta * ((big_pow(p, s) - 1) / (p - 1))) < t + ell) ++s;

    auto top = [&](unsigned long e) { return BigInt(big_pow(p, e) * b + r_p(e, p) * alpha); };
    auto bottom = [&](unsigned long e) { return BigInt(big_pow(p, e) * b + ell); };

    // the exponent is the same for every e > s and has the predicted value
    const long predicted = nu_binomial(p * t + b + delta, b, p) +
                           nu_binomial(BigInt(delta * ((big_pow(p, s) - 1) / (p - 1)) - t), ell, p);
    for (unsigned long e = s + 1; e <= s + 3; ++e) {
      rec.count("valuation_checks");
      const long v = nu_binomial(top(e), bottom(e), p);
      if (v != predicted) {
        rec.fail(tuple({{"part", std::string("valuation")}, {"p", p}, {"alpha", alpha}, {"b", b}, {"l", ell},
                        {"e", e}, {"nu", v}, {"predicted", predicted}}));
      }
    }

    // unit parts at e-1 and e agree mod p^(e + f - 1)
    long f = std::min<long>(nu_p(b, p) - lg_p(alpha, p), 1);
    if (ell > 0) f = std::min({f, nu_p(alpha, p) - lg_p(ell, p), nu_p(b, p) - lg_p(ell, p)});
    for (unsigned long e = std::max<unsigned long>(2, s + 1); e <= s + 3; ++e) {
      if (BigInt(ell) >= r_p(e - 1, p) * alpha || BigInt(ell) >= big_pow(p, e) * b) continue;
      const long E = static_cast<long>(e) + f - 1;
      if (E <= 0) {
        rec.count("vacuous_congruences");
        continue;
      }
      rec.count("unit_checks");
      const BigInt u_prev = u_p(binomial_exact(top(e - 1), bottom(e - 1).get_ui()), p);
      const BigInt u_next = u_p(binomial_exact(top(e), bottom(e).get_ui()), p);
      const BigInt diff = u_next - u_prev;
      if (diff == 0) continue;
      const long slack = nu(diff, p) - E;
      rec.slack(slack);
      if (slack < 0) {
        if (slack == -1) rec.count("unit_fails_holds_one_digit_lower");
        rec.fail(tuple({{"part", std::string("unit")}, {"p", p}, {"alpha", alpha}, {"b", b}, {"l", ell}, {"e", e},
                        {"f", f}, {"nu_diff", nu(diff, p)}}));
      }
    }
  }
  return rec.finish();
}

VerificationReport check_dseq(const SamplingPlan& plan) {
  Recorder rec("dseq", plan, true);
  for (unsigned long d = 1; d <= 12; ++d) {
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), d);
    for (unsigned long ell = 0; ell <= 6; ++ell) {
      rec.trial();
      BigInt sum = 0;
      for (unsigned long j = 0; 2 * j <= d; ++j) {
        BigInt power;
        mpz_ui_pow_ui(power.get_mpz_t(), 2 * j, 2 * ell + d - 1);  // 0^0 = 1
        sum += binomial_exact(d, 2 * j) * power;
      }
      const Rational x = make_rational(sum, fact);
      if (x == 0) {
        rec.count("zero_sum");
        continue;
      }
      // nu >= 2l + d/2 - 1 over the integers
      const long rhs = 2 * static_cast<long>(ell) - 1 + static_cast<long>((d + 1) / 2);
      const long lhs = nu(x, 2);
      rec.slack(lhs - rhs);
      if (lhs < rhs) rec.fail(tuple({{"d", d}, {"l", ell}, {"lhs", lhs}, {"rhs", rhs}}));
    }
  }
  return rec.finish();
}

VerificationReport check_kwong(const SamplingPlan& plan) {
  Recorder rec("kwong", plan, true);
  Sampler rng(plan);
  const auto& S = exact_table(plan.size_bound);
  for (int trial = 0; trial < plan.trials; ++trial) {
    const unsigned long p = rng.prime();
    const unsigned long k = rng.uniform(1, 20);
    const unsigned long x = rng.uniform(k + 1, plan.size_bound / 2);
    const long t_max = static_cast<long>((plan.size_bound - x) / (p - 1));
    if (t_max < 1) {
      rec.count("skipped_too_large");
      continue;
    }
    const unsigned long y = (p - 1) * rng.uniform(1, t_max);
    rec.trial();
    const BigInt diff = S.at(x + y, k) - S.at(x, k);
    if (diff == 0) {
      rec.count("zero_difference");
      continue;
    }
    const long lhs = nu(diff, p);
    const long rhs = nu_p(y, p) + 2 - ceil_log_p(k, p);
    rec.slack(lhs - rhs);
    if (lhs < rhs) {
      if (static_cast<long>(x) < nu_p(y, p) + 2) rec.count("failures_with_x_below_nu_y_plus_2");
      rec.fail(tuple({{"p", p}, {"k", k}, {"x", x}, {"y", y}, {"lhs", lhs}, {"rhs", rhs}}));
    }
  }
  return rec.finish();
}

VerificationReport check_hockey(const SamplingPlan& plan) {
  Recorder rec("hockey", plan, false);
  for (unsigned long B = 1; B <= 60; ++B) {
    BigInt sum = 0;
    for (unsigned long A = 1; A <= 60; ++A) {
      sum += binomial_exact(A - 1 + B - 1, A - 1);
      rec.trial();
      if (sum != binomial_exact(A + B - 1, B)) rec.fail(tuple({{"A", A}, {"B", B}}));
    }
  }
  return rec.finish();
}

VerificationReport check_rior(const SamplingPlan& plan) {
  Recorder rec("rior", plan, false);
  constexpr unsigned long kGrid = 60;

  std::vector<std::vector<BigInt>> pascal(2 * kGrid + 1);
  for (unsigned long n = 0; n < pascal.size(); ++n) {
    pascal[n].resize(n + 1);
    pascal[n][0] = pascal[n][n] = 1;
    for (unsigned long k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  auto C = [&](unsigned long n, unsigned long k) -> const BigInt& {
    static const BigInt zero = 0;
    return k > n ? zero : pascal[n][k];
  };

  for (unsigned long B = 1; B <= kGrid; ++B) {
    for (unsigned long M = 0; M <= kGrid; ++M) {
      for (unsigned long ell = 0; ell <= M; ++ell) {
        rec.trial();
        BigInt lhs = 0;
        for (unsigned long j = 0; j + ell <= M; ++j) lhs += C(B + j - 1, j) * C(M - j, ell);
        if (lhs != C(B + M, B + ell)) rec.fail(tuple({{"B", B}, {"M", M}, {"l", ell}}));
      }
    }
  }

  // the shapes used in the limit argument: B = p^e b, M = R_p(e)(a - b)
  for (unsigned long p : plan.primes) {
    for (unsigned long e = 1; big_pow(p, e) <= plan.size_bound; ++e) {
      for (unsigned long b = 1; big_pow(p, e) * b <= plan.size_bound; ++b) {
        for (unsigned long amb = 1; amb <= 3; ++amb) {
          const BigInt Mbig = r_p(e, p) * amb;
          if (Mbig > plan.size_bound) break;
          const unsigned long B = big_pow(p, e).get_ui() * b;
          const unsigned long M = Mbig.get_ui();
          for (unsigned long ell : {0UL, 1UL, 2UL, M / 2, M - 1, M}) {
            if (ell > M) continue;
            rec.trial();
            rec.count("shape_cases");
            BigInt lhs = 0;
            for (unsigned long j = 0; j + ell <= M; ++j) {
              lhs += binomial_exact(B + j - 1, j) * binomial_exact(M - j, ell);
            }
            if (lhs != binomial_exact(B + M, B + ell)) {
              rec.fail(tuple({{"p", p}, {"e", e}, {"B", B}, {"M", M}, {"l", ell}}));
            }
          }
        }
      }
    }
  }
  return rec.finish();
}

VerificationReport check_unit_product(const SamplingPlan& plan) {
  Recorder rec("unit_product", plan, false);
  Sampler rng(plan);
  for (unsigned long p : plan.primes) {
    for (unsigned long e = 1; big_pow(p, e) <= 4096; ++e) {
      const std::uint64_t m = ipow(p, e);
      const std::uint64_t classical = (p == 2 && e >= 3) ? 1 % m : m - 1;
      for (int w = 0; w < 3; ++w) {
        const std::uint64_t start = w == 0 ? 1 : static_cast<std::uint64_t>(rng.uniform(0, 1'000'000'000));
        std::uint64_t prod = 1 % m;
        for (std::uint64_t i = start; i < start + m; ++i) {
          if (i % p != 0) prod = prod * (i % m) % m;
        }
        rec.trial();
        if (prod == m - 1) rec.count("product_minus_one");
        if (prod == 1 % m) rec.count("product_plus_one");
        if (prod != classical) {
          rec.fail(tuple({{"p", p}, {"e", e}, {"start", static_cast<unsigned long>(start)},
                          {"product", static_cast<unsigned long>(prod)}}));
        }
      }
    }
  }
  return rec.finish();
}

const std::vector<std::pair<std::string, SuiteFn>>& verification_suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"cm_42", check_cm_42}, {"cm_43", check_cm_43}, {"tdiff", check_tdiff},
      {"hockey", check_hockey}, {"plem", check_plem}, {"limlem", check_limlem},
      {"dseq", check_dseq}, {"kwong", check_kwong}, {"rior", check_rior},
      {"unit_product", check_unit_product},
  };
  return suites;
}

const SuiteFn* find_suite(const std::string& name) {
  for (const auto& [key, fn] : verification_suites()) {
    if (key == name) return &fn;
  }
  return nullptr;
}

std::string format_summary_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "suite" << std::right << std::setw(8) << "trials" << std::setw(10)
      << "failures" << std::setw(11) << "min_slack" << "  status\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(14) << r.suite << std::right << std::setw(8) << r.trials << std::setw(10)
        << r.failures << std::setw(11) << (r.min_slack ? std::to_string(*r.min_slack) : std::string("-")) << "  "
        << (r.passed() ? "pass" : "FAIL") << '\n';
  }
  return out.str();
}

} // namespace pstirling
