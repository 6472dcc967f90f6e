#pragma once

#include "pstirling/limits.hpp"
#include "pstirling/verification.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pstirling::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsage = 2,
  kNonConvergence = 3,
  kUnsupported = 4,
};

enum class Method { empirical, closed, both };
std::string to_string(Method m);
std::optional<Method> parse_method(const std::string& s);

struct ValueRequest {
  LimitSpec spec;
  std::optional<Method> method;  // empty: both when a closed form exists, else empirical
  std::optional<int> e_start;
  std::optional<int> e_max;
};

struct ValueResult {
  ValueRequest request;
  Method method = Method::empirical;
  PadicInt value{2, 1, 0};
  std::optional<LimitReport> empirical;
  std::optional<ClosedForm> closed;
  std::optional<bool> agree;
  double timing_ms = 0;
};

/// Evaluates the limit. Throws DomainError for bad input; a missing closed form
/// for method=closed is reported as ClosedFormRule::unsupported in `closed`.
ValueResult evaluate_value(const ValueRequest& request);

json padic_json(const PadicInt& x);
json value_record(const ValueResult& result);
std::string value_text(const ValueResult& result, bool with_history);

enum class TableFormat { csv, md, json };
std::optional<TableFormat> parse_table_format(const std::string& s);

struct TableRequest {
  std::string name;                         // t1, t2 or t3
  TableFormat format = TableFormat::csv;
  std::vector<unsigned long> primes{2, 3};  // t2 rows
  std::optional<long> c_min, c_max;
  std::optional<long> d_max;
};

/// Regenerates the table from the definitions. Throws DomainError for a bad name or range.
std::string render_table(const TableRequest& request);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

json report_record(const VerificationReport& report);

/// Full command line (without argv[0]); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pstirling::cli
