#include "rcbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rcbound/special.hpp"

namespace rcbound {

namespace {

constexpr std::int64_t kMaxBlocklength = 1000000;
// Transition band around sum = 1: inside it the complement is rounding noise
// and the bound is reported as 0; a sum beyond it means a real defect.
const double kGuardBand = 1e-9;

void check_blocklength(std::int64_t n) {
  if (n < 1 || n > kMaxBlocklength) {
    throw DomainError("blocklength must be in [1, 1e6]");
  }
}

double log_binom_pmf(std::int64_t n, std::int64_t i, double delta) {
  if (delta == 0.0) return i == 0 ? 0.0 : kNegInf;
  if (delta == 1.0) return i == n ? 0.0 : kNegInf;
  double r = log_binomial(n, i);
  if (i > 0) r += double(i) * std::log(delta);
  if (i < n) r += double(n - i) * std::log1p(-delta);
  return r;
}

// Shared tail of the two discrete closed forms. The per-realization loss
// terms are all positive, so the fold keeps full relative precision; the
// guard band only polices rounding overshoot past epsilon = 1.
BoundResult positive_sum_result(double log_eps, Method method,
                                std::int64_t terms, std::int64_t n) {
  if (log_eps > std::log1p(kGuardBand)) {
    throw InvariantViolation("error mass exceeds 1 beyond rounding");
  }
  BoundResult out;
  out.method = method;
  out.flags = kFlagNone;
  out.diag.terms = terms;
  out.diag.cells = 0;
  out.log_epsilon = LogReal::from_log(std::min(log_eps, 0.0));
  out.err_est = out.log_epsilon.linear() * double(n + 2) * 4e-12;
  return out;
}

// log E[T/(1+T)] for T ~ Binomial(m-1, p): the probability of losing the
// uniform tie-break given no competitor lands strictly closer. lp = log p,
// lq = log(1-p); lq must carry full absolute precision near 0, the rest is
// handled here. Exactly 1 - (1 - q^m)/(p m), reassociated so that values far
// below double rounding keep their relative precision.
double log_loss_given_no_closer(double lp, double lq, const EnsembleSize& m) {
  if (m.is_one() || lp == kNegInf) return kNegInf;
  const double la = m.log_m() + lp;  // log(p m)
  if (la >= std::log(0.5)) {
    // q^m <= exp(-pm) <= 0.61 here, so neither complement can cancel.
    const double lk = detail::log1mexp(std::min(m.scale_by_m(lq), -0.0)) - la;
    return detail::log1mexp(std::min(lk, -0.0));
  }
  // p m < 1/2: expand over the number of tying competitors,
  //   sum_{t>=1} C(m-1, t) p^t q^(m-1-t) * t/(t+1),
  // normalized to the t = 1 term. Successive ratios decay at least
  // geometrically (they carry signs once t exceeds a non-integer m - 1), so
  // a linear accumulation is exact to rounding.
  const double lfirst = m.log_m_minus_1() + lp +
                        (m.scale_by_m_minus_1(lq) - lq) - std::log(2.0);
  if (lfirst == kNegInf) return kNegInf;
  const bool small = m.log2_m() <= 59.0;
  const double m1 = small ? std::expm1(m.log_m()) : 0.0;  // m - 1, exact
  const double pq = std::exp(lp - lq);
  const double lgrow = m.log_m_minus_1() + lp - lq;  // log((m-1) p/q)
  double ratio = 1.0, sum = 1.0;
  for (int t = 1; t < 400; ++t) {
    const double grow = small ? (m1 - double(t)) * pq : std::exp(lgrow);
    ratio *= grow * double(t + 1) / (double(t) * double(t + 2));
    sum += ratio;
    if (std::fabs(ratio) <= 1e-18 * sum) {
      return std::min(lfirst + std::log(sum), 0.0);
    }
  }
  throw ConvergenceError("tie-break loss series did not converge");
}

BoundResult exact_zero(Method method) {
  BoundResult out;
  out.method = method;
  out.log_epsilon = LogReal::zero();
  out.err_est = 0.0;
  out.flags = kFlagNone;
  out.diag = {};
  return out;
}

}  // namespace

ChannelSpec ChannelSpec::bsc(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw DomainError("bsc: crossover must be in [0, 0.5]");
  }
  return ChannelSpec{Channel::bsc, delta};
}

ChannelSpec ChannelSpec::bec(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("bec: erasure probability must be in [0, 1]");
  }
  return ChannelSpec{Channel::bec, delta};
}

ChannelSpec ChannelSpec::awgn(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("awgn: snr must be positive finite");
  }
  return ChannelSpec{Channel::awgn, gamma};
}

std::string method_name(Method m) {
  switch (m) {
    case Method::rc: return "rc";
    case Method::awgn_upper: return "awgn_upper";
    case Method::awgn_lower: return "awgn_lower";
    case Method::bec_rcu: return "bec_rcu";
    case Method::bec_dt: return "bec_dt";
    case Method::bec_converse: return "bec_converse";
  }
  return "unknown";
}

std::string flags_to_string(unsigned flags) {
  static const struct { unsigned bit; const char* name; } kNames[] = {
      {kFlagDepthExceeded, "depth_exceeded"},
      {kFlagComplementGuard, "complement_guard"},
      {kFlagNoFeasibleRate, "no_feasible_rate"},
      {kFlagMonotonicityViolation, "monotonicity_violation"},
      {kFlagAtRateCap, "at_rate_cap"},
      {kFlagEvalFailed, "eval_failed"},
  };
  std::string out;
  for (const auto& f : kNames) {
    if (flags & f.bit) {
      if (!out.empty()) out += '|';
      out += f.name;
    }
  }
  if (out.empty()) out = "none";
  return out;
}

BoundResult bsc_rc(double delta, std::int64_t n, const EnsembleSize& m) {
  ChannelSpec::bsc(delta);
  check_blocklength(n);
  if (m.is_one()) return exact_zero(Method::rc);
  const std::vector<LogReal> tail = log_binomial_tail_table(n);
  const double ln2 = std::log(2.0);
  const double nln2 = double(n) * ln2;
  // log of tail(k)/2^n with full absolute precision near 0: above 1/2, route
  // through the complementary partial sum, which by symmetry of the binomial
  // row is the same table at the mirrored index n - k + 1.
  auto ltail = [&](std::int64_t k) {
    const double direct = tail[size_t(k)].log() - nln2;
    if (direct <= -ln2) return direct;
    return detail::log1mexp(tail[size_t(n - k + 1)].log() - nln2);
  };
  double acc = kNegInf;
  for (std::int64_t i = 0; i <= n; ++i) {
    // Received word at distance i from the transmitted one. A competitor is
    // strictly closer / tied / strictly farther with mass (1-s) / w / z.
    const double ls = ltail(i);      // distance >= i: tied or farther
    const double lz = ltail(i + 1);  // distance > i: strictly farther
    const double lw = log_binomial(n, i) - nln2;
    const double lp = lw - ls;
    const double lq = lp < -ln2 ? std::log1p(-std::exp(lp)) : lz - ls;
    // Lose to a strictly closer competitor, or survive them all and lose
    // the tie-break. Both pieces are positive: no terminal complement.
    const double lsm1 = std::min(m.scale_by_m_minus_1(ls), -0.0);
    const double lclose = detail::log1mexp(lsm1);
    const double ltie = lsm1 + log_loss_given_no_closer(lp, lq, m);
    acc = detail::log_add(acc, log_binom_pmf(n, i, delta) +
                                   detail::log_add(lclose, ltie));
  }
  return positive_sum_result(acc, Method::rc, n + 1, n);
}

BoundResult bec_rc(double delta, std::int64_t n, const EnsembleSize& m) {
  ChannelSpec::bec(delta);
  check_blocklength(n);
  if (m.is_one()) return exact_zero(Method::rc);
  const double ln2 = std::log(2.0);
  double acc = kNegInf;
  for (std::int64_t i = 0; i <= n; ++i) {
    // i erasures leave n - i revealed positions; a competitor ties iff it
    // matches all of them, w.p. 2^(i-n), and can never be strictly closer,
    // so the only loss channel is the tie-break.
    const double lp = double(i - n) * ln2;
    const double lq = i == n ? kNegInf : detail::log1mexp(lp);
    acc = detail::log_add(acc, log_binom_pmf(n, i, delta) +
                                   log_loss_given_no_closer(lp, lq, m));
  }
  return positive_sum_result(acc, Method::rc, n + 1, n);
}

namespace {

enum class AwgnBracket { kExact, kUpper, kLower };

BoundResult awgn_rc_common(double gamma, std::int64_t n, const EnsembleSize& m,
                           const QuadratureConfig& cfg, AwgnBracket kind,
                           Method method) {
  ChannelSpec::awgn(gamma);
  check_blocklength(n);
  if (m.is_one()) return exact_zero(method);

  const GammaParams g{double(n) / 2.0, 2.0 / gamma};
  const double tm = cfg.tail_mass / 2.0;
  const double x_lo = gamma_quantile(g, tm);
  const double x_hi = gamma_quantile(g, 1.0 - tm);

  // Density of the squared radius x of the transmitted point, times the
  // density of a competitor statistic y given x, times the chance that at
  // least one of m-1 competitors beats radius x (the bracket).
  auto f2 = [&](double x, double y) {
    const double lg = gamma_log_pdf(g, x);
    const double lp = ncx2_log_pdf(NoncentralChi2Params{n, x}, y);
    const NoncentralChi2Params comp{n, y};
    double lb = kNegInf;
    switch (kind) {
      case AwgnBracket::kExact: {
        const double e = m.scale_by_m_minus_1(ncx2_log_sf(comp, x));
        lb = detail::log1mexp(std::min(e, 0.0));
        break;
      }
      case AwgnBracket::kUpper:
        lb = std::min(0.0, m.log_m_minus_1() + ncx2_log_cdf(comp, x));
        break;
      case AwgnBracket::kLower: {
        const double lsf = ncx2_log_sf(comp, x);
        if (lsf == 0.0) break;  // no competitor can land closer
        double u;
        if (m.log2_m() <= 60.0) {
          u = std::expm1(m.log_m()) * -lsf;
        } else {
          u = std::exp(m.log_m_minus_1() + std::log(-lsf));
        }
        // 1 - 1/(1+u); past 1e15 the quotient is 1 to double precision.
        lb = u > 1e15 ? 0.0 : std::log(u) - std::log1p(u);
        break;
      }
    }
    return lb == kNegInf ? 0.0 : std::exp(lg + lp + lb);
  };

  auto inner_bounds = [&](double x) {
    const NoncentralChi2Params d{n, x};
    return std::pair<double, double>{ncx2_quantile(d, tm),
                                     ncx2_quantile(d, 1.0 - tm)};
  };

  const QuadResult q = integrate_2d_iterated(f2, x_lo, x_hi, inner_bounds, cfg);

  BoundResult out;
  out.method = method;
  out.flags = q.depth_exceeded ? kFlagDepthExceeded : kFlagNone;
  out.diag.terms = 0;
  out.diag.cells = q.cells;
  if (q.value < 0.0) out.flags |= kFlagComplementGuard;  // below quadrature noise
  const double v = std::min(std::max(q.value, 0.0), 1.0);
  out.log_epsilon = LogReal::from_linear(v);
  out.err_est = q.err_est + 2.0 * cfg.tail_mass;
  return out;
}

}  // namespace

BoundResult awgn_rc_exact(double gamma, std::int64_t n, const EnsembleSize& m,
                          const QuadratureConfig& cfg) {
  return awgn_rc_common(gamma, n, m, cfg, AwgnBracket::kExact, Method::rc);
}

BoundResult awgn_rc_upper(double gamma, std::int64_t n, const EnsembleSize& m,
                          const QuadratureConfig& cfg) {
  return awgn_rc_common(gamma, n, m, cfg, AwgnBracket::kUpper, Method::awgn_upper);
}

BoundResult awgn_rc_lower(double gamma, std::int64_t n, const EnsembleSize& m,
                          const QuadratureConfig& cfg) {
  return awgn_rc_common(gamma, n, m, cfg, AwgnBracket::kLower, Method::awgn_lower);
}

}  // namespace rcbound
