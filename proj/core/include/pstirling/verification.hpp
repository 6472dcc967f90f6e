#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pstirling {

struct SamplingPlan {
  std::vector<unsigned long> primes{2, 3, 5};
  int trials = 100;
  std::uint64_t seed = 42;
  /// Largest Stirling/binomial argument drawn by the Stirling suites.
  unsigned long size_bound = 300;
};

struct VerificationReport {
  std::string suite;
  long trials = 0;
  long failures = 0;
  std::optional<long> min_slack;  // bound suites only
  std::uint64_t seed = 0;
  /// Failing input tuples, sorted; at most kMaxSamples are kept.
  std::vector<std::string> samples;
  /// Suite-specific tallies (case splits, skipped trivial cases, ...).
  std::map<std::string, long> counters;

  static constexpr std::size_t kMaxSamples = 50;

  bool is_bound_suite() const noexcept { return min_slack.has_value(); }
  bool passed() const noexcept { return failures == 0 && (!min_slack || *min_slack >= 0); }
};

// Stirling congruences of Chan and Manna, against exact values.
VerificationReport check_cm_42(const SamplingPlan& plan);
VerificationReport check_cm_43(const SamplingPlan& plan);

// Valuation bounds. min_slack is the smallest lhs - rhs seen.
VerificationReport check_tdiff(const SamplingPlan& plan);
VerificationReport check_plem(const SamplingPlan& plan);
VerificationReport check_limlem(const SamplingPlan& plan);
VerificationReport check_dseq(const SamplingPlan& plan);  // exhaustive, d <= 12, l <= 6
VerificationReport check_kwong(const SamplingPlan& plan);

// Exact identities, exhaustive on parameters <= 60.
VerificationReport check_hockey(const SamplingPlan& plan);
VerificationReport check_rior(const SamplingPlan& plan);

/// Product of the units in windows of p^e consecutive integers, mod p^e.
/// Fails when it differs from the classical value (-1, or +1 for p = 2, e >= 3);
/// counters record how often the product is -1 and +1.
VerificationReport check_unit_product(const SamplingPlan& plan);

using SuiteFn = std::function<VerificationReport(const SamplingPlan&)>;

/// Suites in a fixed order, keyed by their short name ("cm_42", "tdiff", ...).
const std::vector<std::pair<std::string, SuiteFn>>& verification_suites();

/// nullptr for an unknown name.
const SuiteFn* find_suite(const std::string& name);

/// Fixed-width table with columns suite, trials, failures, min_slack, status.
std::string format_summary_table(const std::vector<VerificationReport>& reports);

} // namespace pstirling
