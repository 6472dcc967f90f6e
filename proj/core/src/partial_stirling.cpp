#include "pstirling/partial_stirling.hpp"

#include "pstirling/errors.hpp"
#include "pstirling/exact_comb.hpp"

#include <algorithm>
#include <vector>

namespace pstirling {

Rational t_partial_exact(unsigned long n, unsigned long k, unsigned long p) {
  if (k == 0) throw DomainError("T_p(n,k) needs k >= 1");
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
  BigInt sum = 0;
  BigInt coeff, power;
  for (unsigned long i = 1; i <= k; ++i) {
    if (i % p == 0) continue;
    mpz_bin_uiui(coeff.get_mpz_t(), k, i);
    mpz_ui_pow_ui(power.get_mpz_t(), i, n);
    if (i % 2 == 0) {
      sum += coeff * power;
    } else {
      sum -= coeff * power;
    }
  }
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), k);
  if (k % 2 == 1) sum = -sum;
  return make_rational(sum, fact);
}

PadicInt t_partial_padic(unsigned long n, unsigned long k, unsigned long p, int precision) {
  return padic_from_rational(t_partial_exact(n, k, p), p, precision);
}

BigInt stirling_like_si(unsigned long i, long c, long d) {
  if (i == 0) throw DomainError("S_i needs i >= 1");
  const long base_c = static_cast<long>(i) - 1;
  const long base_d = static_cast<long>(i);
  auto boundary = [&](long cc, long dd) -> BigInt { return (cc == base_c && dd == base_d) ? 1 : 0; };
  if (c < 0 || d < 0 || d < base_d || c <= d - 1) return boundary(c, d);

  // rows[cc][dd] for cc in [0, c], dd in [0, d]; recurrence applies where cc >= dd >= i
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(c) + 1,
                                        std::vector<BigInt>(static_cast<std::size_t>(d) + 1));
  for (long cc = 0; cc <= c; ++cc) {
    for (long dd = 0; dd <= d; ++dd) {
      if (dd < base_d || cc <= dd - 1) {
        rows[cc][dd] = boundary(cc, dd);
      } else {
        rows[cc][dd] = dd * rows[cc - 1][dd] + rows[cc - 1][dd - 1];
      }
    }
  }
  return rows[c][d];
}

TPoly TPoly::term(unsigned i) {
  TPoly t;
  t.set_coeff(i, 1);
  return t;
}

Rational TPoly::coeff(unsigned i) const {
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void TPoly::set_coeff(unsigned i, const Rational& q) {
  if (i == 0) throw DomainError("T-polynomial terms are indexed from 1");
  if (q == 0) {
    coeffs_.erase(i);
  } else {
    coeffs_[i] = q;
  }
}

TPoly& TPoly::operator+=(const TPoly& o) {
  constant_ += o.constant_;
  for (const auto& [i, q] : o.coeffs_) set_coeff(i, coeff(i) + q);
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  constant_ -= o.constant_;
  for (const auto& [i, q] : o.coeffs_) set_coeff(i, coeff(i) - q);
  return *this;
}

TPoly& TPoly::operator*=(const Rational& q) {
  if (q == 0) {
    *this = TPoly();
    return *this;
  }
  constant_ *= q;
  for (auto& [i, c] : coeffs_) c *= q;
  return *this;
}

TPoly& TPoly::operator/=(const Rational& q) {
  if (q == 0) throw DivisionByZero("T-polynomial divided by zero");
  constant_ /= q;
  for (auto& [i, c] : coeffs_) c /= q;
  return *this;
}

TPoly tpoly_forward(long c, long d) {
  if (d < 1 || c < d - 1) throw DomainError("tpoly_forward needs d >= 1 and c >= d - 1");
  TPoly poly(Rational(stirling2_exact(static_cast<unsigned long>(c), static_cast<unsigned long>(d))));
  for (long i = 1; i <= d; ++i) {
    poly.set_coeff(static_cast<unsigned>(i), Rational(stirling_like_si(static_cast<unsigned long>(i), c, d)));
  }
  return poly;
}

TPoly tpoly_backward(unsigned long k, unsigned long d) {
  if (k == 0) throw DomainError("tpoly_backward needs k >= 1");
  // column[dd] = Y(kk, dd) for the current kk
  std::vector<TPoly> column(d + 1);
  for (unsigned long dd = 1; dd <= d; ++dd) column[dd] = TPoly::term(static_cast<unsigned>(dd));
  for (unsigned long kk = 2; kk <= k; ++kk) {
    for (unsigned long dd = d; dd >= 1; --dd) {
      column[dd] = (column[dd] - column[dd - 1]) / Rational(dd);
    }
    column[0] = TPoly();
  }
  return column[d];
}

std::string format_tpoly(const TPoly& poly, TermOrder order, TermSpacing spacing) {
  struct Term {
    Rational q;
    std::string symbol;
  };
  std::vector<Term> terms;
  if (poly.constant() != 0) terms.push_back({poly.constant(), ""});
  std::vector<Term> t_terms;
  for (const auto& [i, q] : poly.coeffs()) t_terms.push_back({q, "T_" + std::to_string(i)});
  if (order == TermOrder::descending) std::reverse(t_terms.begin(), t_terms.end());
  terms.insert(terms.end(), t_terms.begin(), t_terms.end());
  if (terms.empty()) return "0";

  const bool spaced = spacing == TermSpacing::spaced;
  std::string out;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const auto& [q, symbol] = terms[n];
    const bool negative = q < 0;
    const Rational mag = abs(q);
    if (n == 0) {
      if (negative) out += "-";
    } else {
      out += spaced ? (negative ? " - " : " + ") : (negative ? "-" : "+");
    }
    if (symbol.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + (spaced ? " " : "");
      out += symbol;
    }
  }
  return out;
}

Rational t_symbol_value(unsigned i, long a, long b, unsigned long p) {
  if (b == 0) throw DomainError("T_i substitution divides by b; b = 0 is unsupported");
  return t_partial_exact(i - 1, i, p) * make_rational(p, p - 1) * make_rational(a - b, b);
}

Rational tpoly_eval_exact(const TPoly& poly, long a, long b, unsigned long p) {
  if (b == 0) throw DomainError("T_i substitution divides by b; b = 0 is unsupported");
  Rational total = poly.constant();
  for (const auto& [i, q] : poly.coeffs()) total += q * t_symbol_value(i, a, b, p);
  return total;
}

TPolyValue tpoly_eval(const TPoly& poly, long a, long b, unsigned long p, int precision) {
  if (b < 1) throw DomainError("tpoly_eval needs b >= 1");
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
  if ((a - b) % static_cast<long>(p - 1) != 0) throw DomainError("tpoly_eval needs a = b mod (p-1)");
  Rational exact = tpoly_eval_exact(poly, a, b, p);
  PadicInt padic = padic_from_rational(exact, p, precision);
  return {std::move(exact), std::move(padic)};
}

} // namespace pstirling
