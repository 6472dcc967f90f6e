// Acceptance checks, one per criterion. Each prints a single PASS/FAIL line.
//   pstirling_acceptance                 run all criteria
//   pstirling_acceptance --criterion N   run one

#include "pstirling/exact_comb.hpp"
#include "pstirling/limits.hpp"
#include "pstirling/modular_comb.hpp"
#include "pstirling/partial_stirling.hpp"
#include "pstirling/verification.hpp"
#include "pstirling_cli/cli.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

using namespace pstirling;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome time_limit(Outcome o, double elapsed, double limit) {
  if (elapsed >= limit) {
    o.pass = false;
    o.detail += "; over time limit " + std::to_string(limit) + " s";
  }
  return o;
}

// Reference t2 rows (published values).
const std::map<unsigned long, std::vector<std::string>> kTable2{
    {2, {"1", "-1", "2", "-14/3", "12", "-164/5", "4208/5", "-86608/315"}},
    {3, {"1", "0", "-3/2", "9/2", "-27/4", "-81/20", "4779/80", "-15309/80"}},
};

Outcome criterion_table2() {
  const auto t0 = Clock::now();
  cli::TableRequest req;
  req.name = "t2";
  req.format = cli::TableFormat::json;
  req.primes = {2, 3};
  const auto table = cli::json::parse(cli::render_table(req));
  Outcome o;
  int matched = 0, total = 0;
  std::ostringstream bad;
  for (const auto& row : table["rows"]) {
    const auto p = row["p"].get<unsigned long>();
    const auto& expected = kTable2.at(p);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      ++total;
      const std::string got = row["cells"][i].get<std::string>();
      if (got == expected[i]) {
        ++matched;
      } else {
        bad << " T_" << p << '(' << i << ',' << i + 1 << ")=" << got << " expected " << expected[i] << ';';
      }
    }
  }
  o.pass = matched == total && total == 16;
  o.detail = std::to_string(matched) + "/" + std::to_string(total) + " cells match" + bad.str();
  return time_limit(o, seconds_since(t0), 1.0);
}

// Reference t1 cells, keyed by (c, d).
const std::map<std::pair<long, long>, std::string> kTable1{
    {{0, 1}, "T_1"},
    {{1, 1}, "1+T_1"},
    {{1, 2}, "T_2"},
    {{2, 1}, "1+T_1"},
    {{2, 2}, "1+T_1+2T_2"},
    {{2, 3}, "T_3"},
    {{3, 1}, "1+T_1"},
    {{3, 2}, "3+3T_1+4T_2"},
    {{3, 3}, "1+T_1+2T_2+3T_3"},
    {{3, 4}, "T_4"},
    {{4, 1}, "1+T_1"},
    {{4, 2}, "7+7T_1+8T_2"},
    {{4, 3}, "6+6T_1+10T_2+9T_3"},
    {{4, 4}, "1+T_1+2T_2+3T_3+4T_4"},
    {{4, 5}, "T_5"},
    {{5, 1}, "1+T_1"},
    {{5, 2}, "15+15T_1+16T_2"},
    {{5, 3}, "25+25T_1+38T_2+27T_3"},
    {{5, 4}, "10+10T_1+18T_2+21T_3+16T_4"},
    {{5, 5}, "1+T_1+2T_2+3T_3+4T_4+5T_5"},
};

Outcome criterion_table1() {
  const auto t0 = Clock::now();
  int matched = 0, total = 0;
  std::ostringstream bad;
  for (long c = 0; c <= 5; ++c) {
    for (long d = 1; d <= 5; ++d) {
      if (c < d - 1) continue;
      ++total;
      const std::string got = format_tpoly(tpoly_forward(c, d), TermOrder::ascending, TermSpacing::compact);
      const auto it = kTable1.find({c, d});
      if (it != kTable1.end() && it->second == got) {
        ++matched;
      } else {
        bad << " (" << c << ',' << d << ")=" << got << ';';
      }
    }
  }
  Outcome o{matched == total && total == static_cast<int>(kTable1.size()),
            std::to_string(matched) + "/" + std::to_string(total) + " cells match" + bad.str()};
  return time_limit(o, seconds_since(t0), 1.0);
}

// Reference t3 cells.
const std::map<std::pair<long, long>, std::string> kTable3{
    {{-2, 1}, "T_1"},
    {{-2, 2}, "1/8 T_2 - 7/8 T_1"},
    {{-2, 3}, "1/81 T_3 - 65/648 T_2 + 85/216 T_1"},
    {{-2, 4}, "1/1024 T_4 - 781/82944 T_3 + 865/20736 T_2 - 415/3456 T_1"},
    {{-1, 1}, "T_1"},
    {{-1, 2}, "1/4 T_2 - 3/4 T_1"},
    {{-1, 3}, "1/27 T_3 - 19/108 T_2 + 11/36 T_1"},
    {{-1, 4}, "1/256 T_4 - 175/6912 T_3 + 115/1728 T_2 - 25/288 T_1"},
    {{0, 1}, "T_1"},
    {{0, 2}, "1/2 T_2 - 1/2 T_1"},
    {{0, 3}, "1/9 T_3 - 5/18 T_2 + 1/6 T_1"},
    {{0, 4}, "1/64 T_4 - 37/576 T_3 + 13/144 T_2 - 1/24 T_1"},
    {{1, 2}, "T_2"},
    {{1, 3}, "1/3 T_3 - 1/3 T_2"},
    {{1, 4}, "1/16 T_4 - 7/48 T_3 + 1/12 T_2"},
    {{2, 3}, "T_3"},
    {{2, 4}, "1/4 T_4 - 1/4 T_3"},
};

Outcome criterion_table3() {
  const auto t0 = Clock::now();
  int matched = 0;
  std::ostringstream bad;
  for (const auto& [cd, expected] : kTable3) {
    const auto [c, d] = cd;
    // c = 0, d = 1 is the forward value Y(1,1)
    const TPoly poly = c >= d - 1 ? tpoly_forward(c, d)
                                  : tpoly_backward(static_cast<unsigned long>(d - c), static_cast<unsigned long>(d));
    const std::string got = format_tpoly(poly, TermOrder::descending);
    if (got == expected) {
      ++matched;
    } else {
      bad << " (" << c << ',' << d << ")=" << got << ';';
    }
  }
  Outcome o{matched == static_cast<int>(kTable3.size()),
            std::to_string(matched) + "/" + std::to_string(kTable3.size()) + " cells match" + bad.str()};
  return time_limit(o, seconds_since(t0), 1.0);
}

// Writes k = p^e b + d with b >= 1 and d <= kSmallKBound, taking e as large as possible.
bool decompose(unsigned long k, unsigned long p, unsigned long& e, unsigned long& b, unsigned long& d) {
  bool found = false;
  for (unsigned long ee = p == 2 ? 3 : 1; big_pow(p, ee) <= k; ++ee) {
    const unsigned long pe = big_pow(p, ee).get_ui();
    if (k % pe <= kSmallKBound) {
      e = ee;
      b = k / pe;
      d = k % pe;
      found = true;
    }
  }
  return found;
}

Outcome criterion_sweep() {
  const auto t0 = Clock::now();
  const int N = 6;
  long checked = 0, mismatches = 0, structured = 0, full = 0;
  std::ostringstream bad;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    StirlingTable table(200, big_pow(p, N));
    for (unsigned long n = 0; n <= 200; ++n) {
      for (unsigned long k = 0; k <= n; ++k) {
        // the structured route whenever k has the shape, the small-k route otherwise
        unsigned long e = 0, b = 0, d = k;
        if (!decompose(k, p, e, b, d)) {
          e = 0;
          b = 0;
          d = k;
        }
        const PadicInt fast = stirling_mod_fast(n, e, b, d, p, N);
        if (b > 0) ++structured;
        if (fast.precision() == N) ++full;
        const BigInt expected = BigInt(table.at(n, k)) % big_pow(p, static_cast<unsigned long>(fast.precision()));
        ++checked;
        if (fast.residue() != expected) {
          if (++mismatches <= 5) bad << " p=" << p << " n=" << n << " k=" << k << ';';
        }
      }
    }
  }
  Outcome o{mismatches == 0, std::to_string(checked) + " entries (" + std::to_string(structured) +
                                 " via p^e b + d, " + std::to_string(full) +
                                 " to all 6 digits), " + std::to_string(mismatches) + " mismatches" + bad.str()};
  return time_limit(o, seconds_since(t0), 60.0);
}

bool congruent(long a, long b, unsigned long p) { return (a - b) % static_cast<long>(p - 1) == 0; }

Outcome criterion_base_limits() {
  const int N = 8;
  long cases = 0, failures = 0;
  double slowest = 0;
  std::ostringstream bad;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    for (long a = 1; a <= 4; ++a) {
      for (long b = 1; b <= a; ++b) {
        ++cases;
        auto t0 = Clock::now();
        const LimitReport s = stirling_limit_empirical({p, a, b, 0, 0, N});
        bool ok = s.stabilized && s.value.precision() >= N;
        if (congruent(a, b, p)) {
          const long pm1 = static_cast<long>(p - 1);
          const LimitReport c =
              binom_limit_empirical({p, (static_cast<long>(p) * a - b) / pm1, static_cast<long>(p) * (a - b) / pm1, -1, 0, N});
          ok = ok && c.stabilized && agree_mod(s.value, c.value, N);
        } else {
          ok = ok && s.value.is_zero();
        }
        slowest = std::max(slowest, seconds_since(t0));
        if (!ok) {
          ++failures;
          bad << " p=" << p << " a=" << a << " b=" << b << ';';
        }
      }
    }
  }
  Outcome o{failures == 0, std::to_string(cases) + " (p,a,b), " + std::to_string(failures) +
                               " failures, slowest " + std::to_string(slowest) + " s" + bad.str()};
  return time_limit(o, slowest, 5.0);
}

Outcome criterion_first_kind() {
  const auto t0 = Clock::now();
  const int N = 6;
  long cases = 0, failures = 0;
  std::ostringstream bad;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    for (long a = 1; a <= 4; ++a) {
      for (long b = 1; b <= a; ++b) {
        const PadicInt base = stirling_limit_empirical({p, a, b, 0, 0, N}).value;
        for (long c = -3; c <= -1; ++c) {
          for (long d = -3; d <= -1; ++d) {
            ++cases;
            const LimitReport r = stirling_limit_empirical({p, a, b, c, d, N});
            const PadicInt expected = base * PadicInt(p, N, stirling1_unsigned_exact(-d, -c));
            if (!r.stabilized || !agree_mod(r.value, expected, N)) {
              ++failures;
              bad << " p=" << p << " a=" << a << " b=" << b << " c=" << c << " d=" << d << ';';
            }
          }
        }
      }
    }
  }
  return {failures == 0, std::to_string(cases) + " limits, " + std::to_string(failures) + " failures, " +
                             std::to_string(seconds_since(t0)) + " s" + bad.str()};
}

Outcome criterion_closed_forms() {
  const auto t0 = Clock::now();
  const int N = 6;
  long compared = 0, skipped = 0, failures = 0;
  std::ostringstream bad;
  const std::vector<std::pair<long, long>> pairs{{1, 1}, {2, 1}, {3, 1}, {3, 3}};
  for (unsigned long p : {2UL, 3UL}) {
    for (const auto& [a, b] : pairs) {
      if (!congruent(a, b, p)) continue;
      for (long d = 1; d <= 4; ++d) {
        for (long c = d - 3; c <= d + 2; ++c) {
          const LimitSpec spec{p, a, b, c, d, N};
          const ClosedForm cf = stirling_limit_closed(spec);
          if (cf.rule == ClosedFormRule::unsupported) {
            ++skipped;
            continue;
          }
          ++compared;
          const LimitReport r = stirling_limit_empirical(spec);
          const int n = std::min({N, r.value.precision(), cf.value->precision()});
          if (!r.stabilized || n < N || !agree_mod(r.value, *cf.value, n)) {
            ++failures;
            bad << " p=" << p << " a=" << a << " b=" << b << " c=" << c << " d=" << d << ';';
          }
        }
      }
    }
  }
  return {failures == 0 && compared > 0, std::to_string(compared) + " compared, " + std::to_string(skipped) +
                                             " unsupported skipped, " + std::to_string(failures) + " failures, " +
                                             std::to_string(seconds_since(t0)) + " s" + bad.str()};
}

Outcome run_suites(const std::vector<std::string>& names, double limit) {
  const auto t0 = Clock::now();
  SamplingPlan plan;
  plan.trials = 100;
  plan.seed = 42;
  Outcome o;
  std::ostringstream detail;
  for (const auto& name : names) {
    const VerificationReport r = (*find_suite(name))(plan);
    detail << name << ": " << r.trials << " trials, " << r.failures << " failures";
    if (r.min_slack) detail << ", min_slack " << *r.min_slack;
    detail << "; ";
    o.pass = o.pass && r.passed();
  }
  const double elapsed = seconds_since(t0);
  detail << std::to_string(elapsed) << " s";
  o.detail = detail.str();
  return time_limit(o, elapsed, limit);
}

Outcome criterion_bound_suites() { return run_suites({"tdiff", "plem", "dseq", "kwong", "limlem"}, 120.0); }

Outcome criterion_identity_suites() { return run_suites({"hockey", "rior"}, 600.0); }

Outcome criterion_existence() {
  Outcome o;
  std::ostringstream detail;
  for (long d : {1L, 2L}) {
    const LimitReport r = stirling_limit_empirical({3, 2, 1, 0, d, 6});
    const auto agree = r.agreement_valuations();
    const bool monotone = std::is_sorted(agree.begin(), agree.end());
    detail << "d=" << d << ": " << (r.stabilized ? "stable" : "not stable") << " at e=" << r.e_stable
           << ", value " << r.value.residue().get_str() << ", agreements";
    for (int v : agree) detail << ' ' << v;
    detail << "; ";
    o.pass = o.pass && r.stabilized && r.value.precision() >= 6 && monotone;
  }
  o.detail = detail.str();
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"t2: T_p(d-1,d) for p = 2, 3", criterion_table2},
    {"t1: forward ratio polynomials", criterion_table1},
    {"t3: backward ratio polynomials", criterion_table3},
    {"stirling_mod_fast against the modular triangle", criterion_sweep},
    {"S(p^oo a, p^oo b) against the binomial limit", criterion_base_limits},
    {"negative offsets against |s(|d|,|c|)| S(p^oo a, p^oo b)", criterion_first_kind},
    {"closed forms against empirical limits", criterion_closed_forms},
    {"bound suites", criterion_bound_suites},
    {"identity suites", criterion_identity_suites},
    {"a != b mod (p-1) limits stabilize", criterion_existence},
};

bool run_one(std::size_t i) {
  const auto& [name, fn] = kCriteria[i];
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %zu %s: %s -- %s\n", i + 1, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "1-10; all when omitted")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  if (criterion > 0) {
    ok = run_one(static_cast<std::size_t>(criterion - 1));
  } else {
    for (std::size_t i = 0; i < kCriteria.size(); ++i) ok = run_one(i) && ok;
  }
  return ok ? 0 : 1;
}
