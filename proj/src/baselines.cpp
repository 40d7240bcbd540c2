#include "rcbound/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace rcbound {

namespace {

constexpr std::int64_t kMaxBlocklength = 1000000;

double log_binom_pmf(std::int64_t n, std::int64_t i, double delta) {
  if (delta == 0.0) return i == 0 ? 0.0 : kNegInf;
  if (delta == 1.0) return i == n ? 0.0 : kNegInf;
  double r = log_binomial(n, i);
  if (i > 0) r += double(i) * std::log(delta);
  if (i < n) r += double(n - i) * std::log1p(-delta);
  return r;
}

// All three baselines have the shape sum_i pmf(i) g(n - i) with g in [0, 1];
// the sum itself is a probability, so only a rounding-slack clamp at 0 is
// needed.
BoundResult fold_over_erasures(double delta, std::int64_t n, Method method,
                               double (*term)(std::int64_t unerased,
                                              const EnsembleSize& m),
                               const EnsembleSize& m) {
  ChannelSpec::bec(delta);
  if (n < 1 || n > kMaxBlocklength) throw DomainError("blocklength must be in [1, 1e6]");
  double acc = kNegInf;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double lt = term(n - i, m);
    if (lt == kNegInf) continue;
    acc = detail::log_add(acc, log_binom_pmf(n, i, delta) + lt);
  }
  BoundResult out;
  out.method = method;
  out.flags = kFlagNone;
  out.diag.terms = n + 1;
  out.err_est = double(n + 2) * 4e-16;
  out.log_epsilon = LogReal::from_log(std::min(acc, 0.0));
  return out;
}

const double kLn2 = std::log(2.0);

double rcu_term(std::int64_t unerased, const EnsembleSize& m) {
  // min(1, (m-1) 2^-unerased)
  return std::min(0.0, m.log_m_minus_1() - double(unerased) * kLn2);
}

double dt_term(std::int64_t unerased, const EnsembleSize& m) {
  // min(1, (m-1)/2 * 2^-unerased)
  return std::min(0.0, m.log_m_minus_1() - double(unerased + 1) * kLn2);
}

double converse_term(std::int64_t unerased, const EnsembleSize& m) {
  // max(0, 1 - 2^unerased / m)
  const double lr = double(unerased) * kLn2 - m.log_m();
  if (lr >= 0.0) return kNegInf;
  return detail::log1mexp(lr);
}

}  // namespace

BoundResult bec_rcu(double delta, std::int64_t n, const EnsembleSize& m) {
  return fold_over_erasures(delta, n, Method::bec_rcu, rcu_term, m);
}

BoundResult bec_dt(double delta, std::int64_t n, const EnsembleSize& m) {
  return fold_over_erasures(delta, n, Method::bec_dt, dt_term, m);
}

BoundResult bec_converse(double delta, std::int64_t n, const EnsembleSize& m) {
  return fold_over_erasures(delta, n, Method::bec_converse, converse_term, m);
}

BoundResult evaluate_bound(const ChannelSpec& spec, std::int64_t n,
                           const EnsembleSize& m, Method method,
                           const QuadratureConfig& cfg) {
  switch (method) {
    case Method::rc:
      switch (spec.channel) {
        case Channel::bsc: return bsc_rc(spec.param, n, m);
        case Channel::bec: return bec_rc(spec.param, n, m);
        case Channel::awgn: return awgn_rc_exact(spec.param, n, m, cfg);
      }
      break;
    case Method::awgn_upper:
      if (spec.channel != Channel::awgn) throw DomainError("awgn_upper needs an awgn channel");
      return awgn_rc_upper(spec.param, n, m, cfg);
    case Method::awgn_lower:
      if (spec.channel != Channel::awgn) throw DomainError("awgn_lower needs an awgn channel");
      return awgn_rc_lower(spec.param, n, m, cfg);
    case Method::bec_rcu:
      if (spec.channel != Channel::bec) throw DomainError("bec_rcu needs a bec channel");
      return bec_rcu(spec.param, n, m);
    case Method::bec_dt:
      if (spec.channel != Channel::bec) throw DomainError("bec_dt needs a bec channel");
      return bec_dt(spec.param, n, m);
    case Method::bec_converse:
      if (spec.channel != Channel::bec) throw DomainError("bec_converse needs a bec channel");
      return bec_converse(spec.param, n, m);
  }
  throw DomainError("unknown channel/method combination");
}

}  // namespace rcbound
