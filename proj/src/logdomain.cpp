#include "rcbound/logdomain.hpp"

#include <cmath>

namespace rcbound {

namespace {
constexpr std::int64_t kMaxN = 10'000'000;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || n > kMaxN || k < 0 || k > n) throw DomainError("log_binomial: need 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

LogReal log_binomial_tail(std::int64_t n, std::int64_t i) {
  if (n < 0 || n > kMaxN || i < 0 || i > n + 1) {
    throw DomainError("log_binomial_tail: need 0 <= i <= n+1");
  }
  // Sum C(n, j) for j = i..n starting at j = n. Terms grow toward the
  // central coefficient, so the accumulator always absorbs from below the
  // running peak; all-positive adds never cancel.
  double acc = kNegInf;
  for (std::int64_t j = n; j >= i; --j) acc = detail::log_add(acc, log_binomial(n, j));
  return LogReal::from_log(acc);
}

std::vector<LogReal> log_binomial_tail_table(std::int64_t n) {
  if (n < 0 || n > kMaxN) throw DomainError("log_binomial_tail_table: n out of range");
  std::vector<LogReal> table(std::size_t(n) + 2);
  table[std::size_t(n) + 1] = LogReal::zero();
  double acc = kNegInf;
  for (std::int64_t i = n; i >= 0; --i) {
    acc = detail::log_add(acc, log_binomial(n, i));
    table[std::size_t(i)] = LogReal::from_log(acc);
  }
  return table;
}

}  // namespace rcbound
