#include "pstirling_cli/cli.hpp"

#include "pstirling/errors.hpp"
#include "pstirling/partial_stirling.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

namespace pstirling::cli {

std::string to_string(Method m) {
  switch (m) {
    case Method::empirical: return "empirical";
    case Method::closed: return "closed";
    case Method::both: return "both";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& s) {
  if (s == "empirical") return Method::empirical;
  if (s == "closed") return Method::closed;
  if (s == "both") return Method::both;
  return std::nullopt;
}

std::optional<TableFormat> parse_table_format(const std::string& s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "md") return TableFormat::md;
  if (s == "json") return TableFormat::json;
  return std::nullopt;
}

ValueResult evaluate_value(const ValueRequest& request) {
  request.spec.validate();
  const auto started = std::chrono::steady_clock::now();
  ValueResult out;
  out.request = request;

  const bool need_closed = request.method != Method::empirical;
  if (need_closed) out.closed = stirling_limit_closed(request.spec);
  const bool have_closed = out.closed && out.closed->rule != ClosedFormRule::unsupported;
  out.method = request.method.value_or(have_closed ? Method::both : Method::empirical);

  if (out.method != Method::closed) {
    LimitPolicy policy = LimitPolicy::defaults(request.spec.digits);
    if (request.e_start) policy.e_start = *request.e_start;
    if (request.e_max) policy.e_max = *request.e_max;
    out.empirical = stirling_limit_empirical(request.spec, policy);
    out.value = out.empirical->value;
  }
  if (out.method != Method::empirical && have_closed) {
    if (out.method == Method::closed) {
      out.value = *out.closed->value;
    } else {
      const int n = std::min(out.value.precision(), out.closed->value->precision());
      out.agree = agree_mod(out.value, *out.closed->value, n);
    }
  }
  out.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return out;
}

json padic_json(const PadicInt& x) {
  json v;
  v["residue"] = x.residue().get_str();
  v["digits"] = x.digit_string();
  const auto val = x.valuation();
  v["valuation"] = val ? json(*val) : json(nullptr);
  v["precision"] = x.precision();
  return v;
}

json value_record(const ValueResult& r) {
  const LimitSpec& s = r.request.spec;
  json rec;
  rec["request"] = {{"p", s.p},           {"a", s.a},
                    {"b", s.b},           {"c", s.c},
                    {"d", s.d},           {"digits", s.digits},
                    {"method", r.request.method ? to_string(*r.request.method) : "default"}};
  rec["value"] = padic_json(r.value);
  rec["method"] = to_string(r.method);
  rec["e_used"] = r.empirical ? json(r.empirical->e_used) : json(nullptr);
  rec["stabilized"] = r.empirical ? json(r.empirical->stabilized) : json(nullptr);
  rec["timing_ms"] = r.timing_ms;
  if (r.method == Method::both) rec["agree"] = r.agree ? json(*r.agree) : json(nullptr);
  return rec;
}

std::string value_text(const ValueResult& r, bool with_history) {
  const LimitSpec& s = r.request.spec;
  std::ostringstream out;
  out << "S(" << s.p << "^oo*" << s.a << (s.c < 0 ? " - " : " + ") << std::abs(s.c) << ", " << s.p << "^oo*" << s.b
      << (s.d < 0 ? " - " : " + ") << std::abs(s.d) << ") mod " << s.p << '^' << r.value.precision() << '\n';
  out << "  value      " << r.value.residue().get_str() << '\n';
  out << "  digits     " << r.value.digit_string() << "  (least significant first)\n";
  const auto v = r.value.valuation();
  out << "  valuation  " << (v ? std::to_string(*v) : ">= " + std::to_string(r.value.precision())) << '\n';
  out << "  method     " << to_string(r.method) << '\n';
  if (r.closed) {
    out << "  closed     " << to_string(r.closed->rule);
    if (r.closed->poly) out << "  ratio " << format_tpoly(*r.closed->poly);
    if (!r.closed->note.empty()) out << "  (" << r.closed->note << ')';
    out << '\n';
  }
  if (r.empirical) {
    out << "  e_used     " << r.empirical->e_used << (r.empirical->stabilized ? "" : "  (not stabilized)") << '\n';
  }
  if (r.agree) out << "  agree      " << (*r.agree ? "yes" : "NO") << '\n';
  if (with_history && r.empirical) {
    const auto agreements = r.empirical->agreement_valuations();
    for (std::size_t i = 0; i < r.empirical->history.size(); ++i) {
      const auto& step = r.empirical->history[i];
      out << "    e=" << step.e << "  " << step.value.reduce(std::min(step.value.precision(), s.digits)).digit_string();
      if (i > 0) out << "  agree " << agreements[i - 1];
      out << '\n';
    }
  }
  return out.str();
}

json report_record(const VerificationReport& r) {
  json rec;
  rec["suite"] = r.suite;
  rec["trials"] = r.trials;
  rec["failures"] = r.failures;
  rec["min_slack"] = r.min_slack ? json(*r.min_slack) : json(nullptr);
  rec["seed"] = r.seed;
  rec["passed"] = r.passed();
  rec["counters"] = json::object();
  for (const auto& [k, v] : r.counters) rec["counters"][k] = v;
  rec["samples"] = r.samples;
  return rec;
}

namespace {

int value_command(const ValueRequest& req, bool as_json, bool history, std::ostream& out, std::ostream& err) {
  const ValueResult r = evaluate_value(req);
  if (req.method == Method::closed && r.closed->rule == ClosedFormRule::unsupported) {
    err << "error: " << r.closed->note << '\n';
    return kUnsupported;
  }
  if (as_json) {
    out << value_record(r).dump() << '\n';
  } else {
    out << value_text(r, history);
  }
  if (r.empirical && !r.empirical->stabilized) {
    err << "error: sequence did not stabilize mod " << req.spec.p << '^' << req.spec.digits << " by e = "
        << r.empirical->e_used << '\n';
    return kNonConvergence;
  }
  if (r.agree && !*r.agree) {
    err << "error: empirical and closed-form values disagree\n";
    return kVerificationFailure;
  }
  return kOk;
}

struct TpolyArgs {
  long c = 0;
  long d = 1;
  bool eval = false;
  unsigned long p = 2;
  long a = 1;
  long b = 1;
  int digits = 8;
  bool as_json = false;
};

int tpoly_command(const TpolyArgs& t, std::ostream& out) {
  if (t.d < 1) throw DomainError("tpoly needs d >= 1");
  const bool forward = t.c >= t.d - 1;
  const TPoly poly = forward ? tpoly_forward(t.c, t.d)
                             : tpoly_backward(static_cast<unsigned long>(t.d - t.c), static_cast<unsigned long>(t.d));
  const std::string text = format_tpoly(poly, forward ? TermOrder::ascending : TermOrder::descending);
  json rec{{"c", t.c}, {"d", t.d}, {"poly", text}};
  std::optional<TPolyValue> value;
  if (t.eval) {
    value = tpoly_eval(poly, t.a, t.b, t.p, t.digits);
    rec["eval"] = {{"p", t.p}, {"a", t.a}, {"b", t.b}, {"exact", pstirling::to_string(value->exact)},
                   {"padic", padic_json(value->padic)}};
  }
  if (t.as_json) {
    out << rec.dump() << '\n';
    return kOk;
  }
  out << text << '\n';
  if (value) {
    out << "exact  " << pstirling::to_string(value->exact) << '\n';
    out << "p-adic " << value->padic.residue().get_str() << " mod " << t.p << '^' << value->padic.precision() << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  std::string suite = "all";
  SamplingPlan plan;
  bool as_json = false;
};

int verify_command(const VerifyArgs& v, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  if (v.suite == "all") {
    chosen = verification_suites();
  } else if (const SuiteFn* fn = find_suite(v.suite)) {
    chosen.emplace_back(v.suite, *fn);
  } else {
    err << "error: unknown suite '" << v.suite << "'\n";
    return kUsage;
  }
  std::vector<VerificationReport> reports;
  for (const auto& [name, fn] : chosen) reports.push_back(fn(v.plan));
  if (v.as_json) {
    for (const auto& r : reports) out << report_record(r).dump() << '\n';
  } else {
    out << format_summary_table(reports);
    for (const auto& r : reports) {
      for (const auto& s : r.samples) out << "  " << r.suite << " failure: " << s << '\n';
    }
  }
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  return ok ? kOk : kVerificationFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic limits of Stirling numbers"};
  app.name("pstirling");
  app.require_subcommand(1);

  ValueRequest vreq;
  std::string method_name;
  bool value_json = false;
  bool value_history = false;
  auto* value = app.add_subcommand("value", "limit of S(p^e a + c, p^e b + d) as e grows");
  value->add_option("--p", vreq.spec.p, "prime")->required();
  value->add_option("--a", vreq.spec.a)->required();
  value->add_option("--b", vreq.spec.b)->required();
  value->add_option("--c", vreq.spec.c)->required();
  value->add_option("--d", vreq.spec.d)->required();
  value->add_option("--digits", vreq.spec.digits, "p-adic digits")->capture_default_str();
  value->add_option("--method", method_name, "empirical, closed or both");
  value->add_option("--e-start", vreq.e_start);
  value->add_option("--e-max", vreq.e_max);
  value->add_flag("--json", value_json);
  value->add_flag("--history", value_history, "print the sequence and consecutive agreements");

  TpolyArgs targs;
  auto* tpoly = app.add_subcommand("tpoly", "ratio polynomial in T_1, T_2, ...");
  tpoly->add_option("--c", targs.c)->required();
  tpoly->add_option("--d", targs.d)->required();
  tpoly->add_flag("--eval", targs.eval);
  tpoly->add_option("--p", targs.p);
  tpoly->add_option("--a", targs.a);
  tpoly->add_option("--b", targs.b);
  tpoly->add_option("--digits", targs.digits);
  tpoly->add_flag("--json", targs.as_json);

  TableRequest treq;
  std::string format_name = "csv";
  auto* table = app.add_subcommand("table", "regenerate t1, t2 or t3");
  table->add_option("name", treq.name)->required();
  table->add_option("--format", format_name);
  table->add_option("--p", treq.primes)->delimiter(',');
  table->add_option("--c-min", treq.c_min);
  table->add_option("--c-max", treq.c_max);
  table->add_option("--d-max", treq.d_max);

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", vargs.suite)->capture_default_str();
  verify->add_option("--trials", vargs.plan.trials)->capture_default_str();
  verify->add_option("--seed", vargs.plan.seed)->capture_default_str();
  verify->add_option("--p", vargs.plan.primes)->delimiter(',');
  verify->add_option("--size-bound", vargs.plan.size_bound)->capture_default_str();
  verify->add_flag("--json", vargs.as_json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*value) {
      if (!method_name.empty()) {
        vreq.method = parse_method(method_name);
        if (!vreq.method) {
          err << "error: unknown method '" << method_name << "'\n";
          return kUsage;
        }
      }
      return value_command(vreq, value_json, value_history, out, err);
    }
    if (*tpoly) return tpoly_command(targs, out);
    if (*table) {
      const auto format = parse_table_format(format_name);
      if (!format) {
        err << "error: unknown format '" << format_name << "'\n";
        return kUsage;
      }
      treq.format = *format;
      out << render_table(treq);
      return kOk;
    }
    if (*verify) return verify_command(vargs, out, err);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

} // namespace pstirling::cli
