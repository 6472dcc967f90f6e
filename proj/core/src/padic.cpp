#include "pstirling/padic.hpp"

#include "pstirling/errors.hpp"

#include <algorithm>

namespace pstirling {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned long d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

void require_same_prime(const PadicInt& x, const PadicInt& y) {
  if (x.prime() != y.prime()) throw PrimeMismatch(x.prime(), y.prime());
}

BigInt mod_floor(const BigInt& n, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

} // namespace

PadicInt::PadicInt(unsigned long prime, int precision, const BigInt& residue)
    : prime_(prime), precision_(precision) {
  if (!is_prime(prime)) throw DomainError("not a prime: " + std::to_string(prime));
  if (precision < 1) throw DomainError("precision must be >= 1");
  residue_ = mod_floor(residue, modulus());
}

PadicInt::PadicInt(Unchecked, unsigned long prime, int precision, BigInt residue)
    : prime_(prime), precision_(precision), residue_(std::move(residue)) {}

PadicInt PadicInt::zero(unsigned long prime, int precision) { return {prime, precision, 0}; }
PadicInt PadicInt::one(unsigned long prime, int precision) { return {prime, precision, 1}; }

BigInt PadicInt::modulus() const { return big_pow(prime_, static_cast<unsigned long>(precision_)); }

std::optional<int> PadicInt::valuation() const {
  auto v = p_valuation(residue_, prime_);
  if (!v) return std::nullopt;
  return static_cast<int>(*v);
}

PadicInt PadicInt::unit_part() const {
  auto v = valuation();
  if (!v) throw ZeroToPrecision("unit_part of a value that is zero mod p^" + std::to_string(precision_));
  BigInt q;
  mpz_divexact(q.get_mpz_t(), residue_.get_mpz_t(), big_pow(prime_, *v).get_mpz_t());
  return {Unchecked{}, prime_, precision_ - *v, q};
}

PadicInt PadicInt::reduce(int precision) const {
  if (precision > precision_) {
    throw InsufficientPrecision("cannot raise precision from " + std::to_string(precision_) + " to " +
                                std::to_string(precision));
  }
  if (precision < 1) throw DomainError("precision must be >= 1");
  return {Unchecked{}, prime_, precision, mod_floor(residue_, big_pow(prime_, precision))};
}

std::string PadicInt::digit_string() const {
  std::string out;
  BigInt rest = residue_;
  for (int i = 0; i < precision_; ++i) {
    const unsigned long d = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), prime_);
    if (prime_ <= 36) {
      out += static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
    } else {
      if (i > 0) out += ',';
      out += std::to_string(d);
    }
  }
  return out;
}

PadicInt PadicInt::operator-() const {
  return {Unchecked{}, prime_, precision_, residue_ == 0 ? BigInt(0) : BigInt(modulus() - residue_)};
}

PadicInt operator+(const PadicInt& x, const PadicInt& y) { return arith(x, y, ArithOp::add); }
PadicInt operator-(const PadicInt& x, const PadicInt& y) { return arith(x, y, ArithOp::sub); }
PadicInt operator*(const PadicInt& x, const PadicInt& y) { return arith(x, y, ArithOp::mul); }

PadicInt arith(const PadicInt& x, const PadicInt& y, ArithOp op) {
  require_same_prime(x, y);
  const int n = std::min(x.precision(), y.precision());
  BigInt r;
  switch (op) {
    case ArithOp::add: r = x.residue() + y.residue(); break;
    case ArithOp::sub: r = x.residue() - y.residue(); break;
    case ArithOp::mul: r = x.residue() * y.residue(); break;
  }
  return {x.prime(), n, r};
}

PadicInt padic_from_integer(const BigInt& n, unsigned long p, int precision) {
  return {p, precision, n};
}

PadicInt padic_from_rational(const Rational& r, unsigned long p, int precision) {
  if (mpz_divisible_ui_p(r.get_den().get_mpz_t(), p)) {
    throw NotPAdicInteger("rational " + to_string(r) + " has negative " + std::to_string(p) +
                          "-adic valuation");
  }
  PadicInt out = PadicInt::zero(p, precision);
  const BigInt m = out.modulus();
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), m.get_mpz_t());
  return {p, precision, BigInt(r.get_num() * inv)};
}

PadicInt div(const PadicInt& x, const PadicInt& y) {
  require_same_prime(x, y);
  const auto vy = y.valuation();
  if (!vy) throw DivisionByZero("divisor is zero mod p^" + std::to_string(y.precision()));
  const auto vx = x.valuation();
  if (vx && *vx < *vy) {
    throw NotDivisible("valuation " + std::to_string(*vx) + " < divisor valuation " + std::to_string(*vy));
  }
  const int n = std::min(x.precision(), y.precision()) - *vy;
  if (n < 1) throw InsufficientPrecision("quotient has no known digits");
  const unsigned long p = x.prime();
  const BigInt m = big_pow(p, static_cast<unsigned long>(n));
  const BigInt pv = big_pow(p, static_cast<unsigned long>(*vy));
  BigInt num, den, inv;
  mpz_divexact(num.get_mpz_t(), x.residue().get_mpz_t(), pv.get_mpz_t());
  mpz_divexact(den.get_mpz_t(), y.residue().get_mpz_t(), pv.get_mpz_t());
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return {p, n, BigInt(num * inv)};
}

PadicInt scale(const PadicInt& x, const Rational& r) {
  const unsigned long p = x.prime();
  if (r == 0) return PadicInt::zero(p, x.precision());
  const long v = *p_valuation(r, p);
  if (v >= 0) return x * padic_from_rational(r, p, x.precision());
  const int s = static_cast<int>(-v);
  const auto vx = x.valuation();
  if (vx && *vx < s) {
    throw NotPAdicInteger("product with " + to_string(r) + " is not a " + std::to_string(p) + "-adic integer");
  }
  if (x.precision() <= s) throw InsufficientPrecision("scaling by " + to_string(r) + " consumes all digits");
  const PadicInt shifted = div(x, padic_from_integer(big_pow(p, s), p, x.precision()));
  const Rational lifted = r * Rational(big_pow(p, s));
  return shifted * padic_from_rational(lifted, p, shifted.precision());
}

bool agree_mod(const PadicInt& x, const PadicInt& y, int digits) {
  require_same_prime(x, y);
  if (digits > x.precision() || digits > y.precision()) {
    throw InsufficientPrecision("agree_mod beyond known precision");
  }
  if (digits <= 0) return true;
  return x.reduce(digits).residue() == y.reduce(digits).residue();
}

int agreement(const PadicInt& x, const PadicInt& y) {
  require_same_prime(x, y);
  const int n = std::min(x.precision(), y.precision());
  const auto v = (x.reduce(n) - y.reduce(n)).valuation();
  return v ? *v : n;
}

std::string describe(const PadicInt& x) {
  const auto v = x.valuation();
  return x.residue().get_str() + " mod " + std::to_string(x.prime()) + "^" + std::to_string(x.precision()) +
         " (valuation " + (v ? std::to_string(*v) : ">=" + std::to_string(x.precision())) + ")";
}

LimitPolicy LimitPolicy::defaults(int digits) { return {digits + 2, digits + 12, 2}; }

std::vector<int> LimitReport::agreement_valuations() const {
  std::vector<int> out;
  for (std::size_t i = 1; i < history.size(); ++i) {
    out.push_back(agreement(history[i - 1].value, history[i].value));
  }
  return out;
}

LimitReport limit_of_sequence(const SequenceGenerator& gen, int digits, const LimitPolicy& policy) {
  if (digits < 1) throw DomainError("limit precision must be >= 1");
  if (policy.agree_count < 1 || policy.e_max < policy.e_start) throw DomainError("invalid limit policy");

  std::vector<LimitStep> history;
  int run = 0;
  int run_start = -1;
  for (int e = policy.e_start; e <= policy.e_max; ++e) {
    PadicInt value = gen(e);
    const bool usable = value.precision() >= digits;
    if (!usable) {
      run = 0;
    } else if (run > 0 && agree_mod(history.back().value, value, digits)) {
      ++run;
    } else {
      run = 1;
      run_start = e;
    }
    history.push_back({e, std::move(value)});
    if (usable && run >= policy.agree_count) {
      LimitReport report{history.back().value.reduce(digits), e, run_start, true, std::move(history)};
      return report;
    }
  }
  if (history.empty()) throw DomainError("empty limit window");
  const PadicInt& last = history.back().value;
  LimitReport report{last.reduce(std::min(digits, last.precision())), policy.e_max, -1, false, std::move(history)};
  return report;
}

} // namespace pstirling
