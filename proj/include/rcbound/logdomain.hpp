#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rcbound/errors.hpp"

// Log-domain arithmetic. Every probability-like quantity in this library is
// carried as its natural logarithm; -inf is the exact representation of zero.
// Values of astronomically different magnitude (say 1e-300000 vs 1e-3) then
// coexist without underflow, and products/powers become sums/scalings.

namespace rcbound {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// How far below `a` a subtrahend may land (in log units) before log_sub
// treats the difference as a rounding artifact and clamps to zero.
inline constexpr double kLogSubTol = 1e-12;

namespace detail {

// log(exp(a) + exp(b)), stable for any ordering, absorbing -inf.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;  // also covers both -inf
  return a + std::log1p(std::exp(b - a));
}

// log(1 - exp(a)) for a <= 0. Split at -log 2: expm1 keeps accuracy when
// exp(a) is close to 1, log1p when it is close to 0.
inline double log1mexp(double a) {
  if (a > 0.0) throw DomainError("log1mexp: argument must be <= 0");
  if (a == kNegInf) return 0.0;
  static const double kLn2 = std::log(2.0);
  if (a > -kLn2) return std::log(-std::expm1(a));
  return std::log1p(-std::exp(a));
}

// log(exp(a) - exp(b)). Requires b <= a up to kLogSubTol; differences within
// the tolerance clamp to -inf, anything beyond it is a domain error.
inline double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b > a) {
    if (b - a <= kLogSubTol) return kNegInf;
    throw DomainError("log_sub: negative difference");
  }
  if (a == b) return kNegInf;
  return a + log1mexp(b - a);
}

}  // namespace detail

// A nonnegative real held as its natural log. Plain value type: two LogReals
// compare by log value, and zero() < any positive value.
class LogReal {
 public:
  constexpr LogReal() : lg_(kNegInf) {}

  static LogReal from_log(double lg) {
    if (std::isnan(lg)) throw DomainError("LogReal: NaN log value");
    return LogReal(lg);
  }
  static LogReal from_linear(double v) {
    if (std::isnan(v) || v < 0.0) throw DomainError("LogReal: negative or NaN linear value");
    return LogReal(std::log(v));
  }
  static constexpr LogReal zero() { return LogReal(); }
  static LogReal one() { return LogReal(0.0); }

  double log() const { return lg_; }
  double linear() const { return std::exp(lg_); }  // may underflow/overflow
  bool is_zero() const { return lg_ == kNegInf; }

  friend bool operator==(LogReal a, LogReal b) { return a.lg_ == b.lg_; }
  friend bool operator!=(LogReal a, LogReal b) { return a.lg_ != b.lg_; }
  friend bool operator<(LogReal a, LogReal b) { return a.lg_ < b.lg_; }
  friend bool operator<=(LogReal a, LogReal b) { return a.lg_ <= b.lg_; }
  friend bool operator>(LogReal a, LogReal b) { return a.lg_ > b.lg_; }
  friend bool operator>=(LogReal a, LogReal b) { return a.lg_ >= b.lg_; }

 private:
  explicit constexpr LogReal(double lg) : lg_(lg) {}
  double lg_;
};

inline LogReal log_add(LogReal a, LogReal b) {
  return LogReal::from_log(detail::log_add(a.log(), b.log()));
}

inline LogReal log_sub(LogReal a, LogReal b) {
  return LogReal::from_log(detail::log_sub(a.log(), b.log()));
}

// Complement: given p as a LogReal (p <= 1 required), returns 1 - p.
inline LogReal log1mexp(LogReal p) {
  return LogReal::from_log(detail::log1mexp(p.log()));
}

// log C(n, k) via lgamma. Exact integer checks live in the tests; here the
// only promise is relative accuracy of the log value.
double log_binomial(std::int64_t n, std::int64_t k);

// log of the upper binomial tail sum_{j=i}^{n} C(n, j); i = n+1 gives zero.
LogReal log_binomial_tail(std::int64_t n, std::int64_t i);

// Full tail table in one O(n) pass: entry [i] = log sum_{j=i}^{n} C(n, j)
// for i in 0..n+1. Each tail accumulates from its smallest terms upward,
// which keeps every entry relatively accurate.
std::vector<LogReal> log_binomial_tail_table(std::int64_t n);

}  // namespace rcbound
