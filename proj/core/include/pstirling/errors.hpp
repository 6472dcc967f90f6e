#pragma once

#include <stdexcept>
#include <string>

namespace pstirling {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad prime, b > a, negative precision...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// nu_p, u_p or lg_p applied to zero.
class ZeroInput : public DomainError {
public:
  using DomainError::DomainError;
};

class PrimeMismatch : public Error {
public:
  PrimeMismatch(unsigned long lhs, unsigned long rhs);
};

/// A rational with negative p-adic valuation was asked to become a p-adic integer.
class NotPAdicInteger : public Error {
public:
  using Error::Error;
};

class NotDivisible : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  using Error::Error;
};

/// unit_part of a value that is zero to its full precision.
class ZeroToPrecision : public Error {
public:
  using Error::Error;
};

class InsufficientPrecision : public Error {
public:
  using Error::Error;
};

/// An input exceeds a configured size cap (exact-table size, table memory, small-k bound).
class ResourceCap : public Error {
public:
  using Error::Error;
};

class KGreaterThanN : public Error {
public:
  using Error::Error;
};

/// Raised when a limit could not be certified within its e budget.
class NonConvergence : public Error {
public:
  using Error::Error;
};

/// Internal consistency failure: an alternating sum that must be divisible by d! was not.
class NonIntegralSum : public Error {
public:
  using Error::Error;
};

class PrecisionUnachievable : public Error {
public:
  using Error::Error;
};

} // namespace pstirling
