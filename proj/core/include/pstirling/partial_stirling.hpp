#pragma once

#include "pstirling/padic.hpp"
#include "pstirling/rational.hpp"

#include <map>
#include <string>

namespace pstirling {

/// T_p(n,k) = (-1)^k / k! * sum over 0 <= i <= k, p not dividing i, of (-1)^i C(k,i) i^n.
/// Exact; k >= 1.
Rational t_partial_exact(unsigned long n, unsigned long k, unsigned long p);

/// p-adic embedding of t_partial_exact; throws NotPAdicInteger.
PadicInt t_partial_padic(unsigned long n, unsigned long k, unsigned long p, int precision);

/// S_i(c,d): zero except S_i(i-1,i) = 1 when d < i or c <= d-1; for c >= d it
/// obeys S_i(c,d) = d S_i(c-1,d) + S_i(c-1,d-1).
BigInt stirling_like_si(unsigned long i, long c, long d);

/// constant + sum coeffs[i] * T_i, where T_i stands for T_p(i-1,i) * p/(p-1) * (a-b)/b.
class TPoly {
public:
  TPoly() = default;
  explicit TPoly(Rational constant) : constant_(std::move(constant)) {}
  /// The single term T_i.
  static TPoly term(unsigned i);

  const Rational& constant() const noexcept { return constant_; }
  /// Nonzero coefficients only, keyed by i >= 1.
  const std::map<unsigned, Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(unsigned i) const;
  void set_coeff(unsigned i, const Rational& q);
  void set_constant(const Rational& q) { constant_ = q; }
  bool is_zero() const noexcept { return constant_ == 0 && coeffs_.empty(); }

  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  TPoly& operator*=(const Rational& q);
  TPoly& operator/=(const Rational& q);
  friend TPoly operator+(TPoly x, const TPoly& y) { return x += y; }
  friend TPoly operator-(TPoly x, const TPoly& y) { return x -= y; }
  friend TPoly operator*(TPoly x, const Rational& q) { return x *= q; }
  friend TPoly operator/(TPoly x, const Rational& q) { return x /= q; }
  friend bool operator==(const TPoly& x, const TPoly& y) = default;

private:
  Rational constant_{0};
  std::map<unsigned, Rational> coeffs_;
};

/// c >= d-1, d >= 1: S(c,d) + sum_{i<=d} S_i(c,d) T_i. Throws DomainError.
TPoly tpoly_forward(long c, long d);

/// Y(k,d) for c = d - k: Y(1,d) = T_d, Y(k,0) = 0, Y(k,d) = (Y(k-1,d) - Y(k-1,d-1)) / d.
TPoly tpoly_backward(unsigned long k, unsigned long d);

enum class TermOrder { ascending, descending };
enum class TermSpacing { spaced, compact };

/// "3 + 3 T_1 + 4 T_2" (ascending, spaced), "1/2 T_2 - 1/2 T_1" (descending),
/// "7+7T_1+8T_2" (compact). The constant always comes first; the zero polynomial is "0".
std::string format_tpoly(const TPoly& poly, TermOrder order = TermOrder::ascending,
                         TermSpacing spacing = TermSpacing::spaced);

/// Value of T_i = T_p(i-1,i) * p/(p-1) * (a-b)/b. Throws DomainError for b = 0.
Rational t_symbol_value(unsigned i, long a, long b, unsigned long p);

/// Exact value of the polynomial after substituting every T_i.
Rational tpoly_eval_exact(const TPoly& poly, long a, long b, unsigned long p);

struct TPolyValue {
  Rational exact;
  PadicInt padic;
};

/// Requires b >= 1 and a = b mod (p-1); throws DomainError otherwise and
/// NotPAdicInteger when the total has negative valuation.
TPolyValue tpoly_eval(const TPoly& poly, long a, long b, unsigned long p, int precision);

} // namespace pstirling
