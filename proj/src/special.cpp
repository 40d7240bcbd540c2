#include "rcbound/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rcbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Mixture truncation certificate: discarded mass stays below 1e-25 of the
// returned value.
const double kCertLog = std::log(1e-25);
// Preselection target for Poisson tail quantiles; comfortably inside the
// certificate with room for the cumulative-mass denominator.
constexpr double kPreselectLog = -80.0;

void check_gamma_args(double a, double x, const char* who) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError(std::string(who) + ": shape must be positive finite");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": x must be nonnegative finite");
}

// Series for the regularized lower incomplete gamma, in log form:
//   P(a, x) = x^a e^-x / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k)).
// All terms positive; the bracketed sum stays in linear space (it is at most
// (a+1)/(a+1-x), far from overflow for x < a+1).
double log_gamma_p_series(double a, double x) {
  double term = 1.0, sum = 1.0;
  for (long k = 1; k < 100000000L; ++k) {
    term *= x / (a + double(k));
    sum += term;
    if (term < sum * 1e-17) {
      return a * std::log(x) - x - std::lgamma(a + 1.0) + std::log(sum);
    }
  }
  throw ConvergenceError("log_gamma_p: series did not converge");
}

// Modified Lentz continued fraction for the upper function, valid (and
// quickly convergent) for x >= a + 1:
//   Q(a, x) = x^a e^-x / Gamma(a) * 1/(x+1-a - 1(1-a)/(x+3-a - ...)).
double log_gamma_q_cf(double a, double x) {
  const double tiny = 1e-290;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (long i = 1; i < 100000000L; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) {
      return a * std::log(x) - x - std::lgamma(a) + std::log(h);
    }
  }
  throw ConvergenceError("log_gamma_q: continued fraction did not converge");
}

// log Poisson(nu) pmf at j.
inline double pois_log_pmf(double nu, std::int64_t j) {
  if (j == 0) return -nu;
  return double(j) * std::log(nu) - nu - std::lgamma(double(j) + 1.0);
}

// Chernoff bound on log P(Pois(nu) >= j); trivial (0) at or below the mean.
inline double pois_upper_tail_log(double nu, double j) {
  if (j <= nu) return 0.0;
  return -nu + j * (1.0 + std::log(nu) - std::log(j));
}

// Chernoff bound on log P(Pois(nu) <= j); trivial (0) at or above the mean.
inline double pois_lower_tail_log(double nu, double j) {
  if (j >= nu) return 0.0;
  if (j <= 0.0) return -nu;
  return -nu + j * (1.0 + std::log(nu) - std::log(j));
}

// Smallest J with log P(Pois >= J + 1) <= target.
std::int64_t pois_upper_quantile(double nu, double target) {
  const double t = -target;
  std::int64_t j = std::int64_t(std::ceil(nu + std::sqrt(2.0 * nu * t) + t));
  while (j > 0 && pois_upper_tail_log(nu, double(j)) <= target) --j;  // tighten
  while (pois_upper_tail_log(nu, double(j + 1)) > target) ++j;
  return j;
}

// Largest j with log P(Pois <= j - 1) <= target (0 when the whole lower tail
// must be kept).
std::int64_t pois_lower_quantile(double nu, double target) {
  const double t = -target;
  double guess = nu - std::sqrt(2.0 * nu * t) - t;
  std::int64_t j = std::max<std::int64_t>(0, std::int64_t(std::floor(guess)));
  while (pois_lower_tail_log(nu, double(j)) <= target) ++j;  // tighten
  while (j > 0 && pois_lower_tail_log(nu, double(j - 1)) > target) --j;
  return j;
}

// log pdf of a central chi-square with kdof degrees of freedom at y > 0.
inline double central_chi2_log_pdf(double half_dof, double y) {
  return (half_dof - 1.0) * std::log(y) - 0.5 * y - half_dof * std::log(2.0) -
         std::lgamma(half_dof);
}

void check_ncx2(const NoncentralChi2Params& p, const char* who) {
  if (p.dof < 1) throw DomainError(std::string(who) + ": dof must be a positive integer");
  if (!(p.noncentrality >= 0.0) || !std::isfinite(p.noncentrality)) {
    throw DomainError(std::string(who) + ": noncentrality must be nonnegative finite");
  }
}

// Generic bisection-safeguarded Newton solve of monotone_log(x) = target on
// x > 0, given an initial bracket [lo, hi] with the target enclosed.
// `increasing` says whether monotone_log grows with x (CDF) or falls (SF).
// Iterates in u = log x: deep lower-tail roots of small-shape gammas sit
// 20+ decades below 1, where any absolute-in-x stopping rule lies, while the
// log-CDF is close to linear in u and Newton converges in a handful of steps.
template <class F, class DlogF>
double newton_on_log(const F& monotone_log, const DlogF& dlog, double lo, double hi,
                     double target, bool increasing, const char* who) {
  double ulo = std::log(lo);
  double uhi = std::log(hi);
  double flo = monotone_log(lo) - target;
  double fhi = monotone_log(hi) - target;
  if (!increasing) { std::swap(flo, fhi); std::swap(ulo, uhi); }
  // Now f(ulo) <= 0 <= f(uhi) in the swapped frame (ulo/uhi may be reversed).
  if (flo > 0.0 || fhi < 0.0) throw ConvergenceError(std::string(who) + ": quantile bracket lost");
  double u = 0.5 * (ulo + uhi);
  for (int it = 0; it < 300; ++it) {
    const double x = std::exp(u);
    const double fx = monotone_log(x) - target;
    if (fx <= 0.0) ulo = u; else uhi = u;
    const double d = x * dlog(x);  // d monotone_log / du
    double step = (d != 0.0 && std::isfinite(d)) ? -fx / d : 0.0;
    double un = u + step;
    if (!(std::isfinite(un)) || un <= std::min(ulo, uhi) || un >= std::max(ulo, uhi) || step == 0.0) {
      un = 0.5 * (ulo + uhi);
    }
    if (std::fabs(un - u) <= 1e-13 * std::max(1.0, std::fabs(un))) return std::exp(un);
    u = un;
  }
  throw ConvergenceError(std::string(who) + ": quantile iteration did not converge");
}

}  // namespace

double log_gamma_p(double a, double x) {
  check_gamma_args(a, x, "log_gamma_p");
  if (x == 0.0) return kNegInf;
  if (x < a + 1.0) return log_gamma_p_series(a, x);
  // At or above the mean the lower function is order one: complement safely.
  return detail::log1mexp(log_gamma_q_cf(a, x));
}

double log_gamma_q(double a, double x) {
  check_gamma_args(a, x, "log_gamma_q");
  if (x == 0.0) return 0.0;
  if (x >= a + 1.0) return log_gamma_q_cf(a, x);
  // Below the mean the lower function tops out near 0.92, so the complement
  // never cancels badly.
  return detail::log1mexp(log_gamma_p_series(a, x));
}

double gamma_log_pdf(const GammaParams& g, double x) {
  if (!(g.shape > 0.0) || !(g.scale > 0.0)) throw DomainError("gamma_log_pdf: bad parameters");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("gamma_log_pdf: x must be nonnegative finite");
  if (x == 0.0) {
    if (g.shape > 1.0) return kNegInf;
    if (g.shape == 1.0) return -std::log(g.scale);
    return kInf;
  }
  return (g.shape - 1.0) * std::log(x) - x / g.scale - g.shape * std::log(g.scale) -
         std::lgamma(g.shape);
}

double gamma_log_cdf(const GammaParams& g, double x) {
  if (!(g.shape > 0.0) || !(g.scale > 0.0)) throw DomainError("gamma_log_cdf: bad parameters");
  return log_gamma_p(g.shape, x / g.scale);
}

double gamma_log_sf(const GammaParams& g, double x) {
  if (!(g.shape > 0.0) || !(g.scale > 0.0)) throw DomainError("gamma_log_sf: bad parameters");
  return log_gamma_q(g.shape, x / g.scale);
}

double gamma_quantile(const GammaParams& g, double q) {
  if (!(g.shape > 0.0) || !(g.scale > 0.0)) throw DomainError("gamma_quantile: bad parameters");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("gamma_quantile: q must lie in (0, 1)");
  const double mean = g.shape * g.scale;
  const double sd = std::sqrt(g.shape) * g.scale;
  if (q <= 0.5) {
    const double lq = std::log(q);
    double lo = std::max(1e-300, mean - 10.0 * sd);
    while (gamma_log_cdf(g, lo) > lq) lo *= 0.25;
    double hi = mean + 10.0 * sd;
    while (gamma_log_cdf(g, hi) < lq) hi *= 2.0;
    return newton_on_log([&](double x) { return gamma_log_cdf(g, x); },
                         [&](double x) { return std::exp(gamma_log_pdf(g, x) - gamma_log_cdf(g, x)); },
                         lo, hi, lq, true, "gamma_quantile");
  }
  const double lt = detail::log1mexp(std::log(q));  // log(1 - q), stable for q near 1
  double hi = mean + 10.0 * sd;
  while (gamma_log_sf(g, hi) > lt) hi *= 2.0;
  double lo = std::max(1e-300, mean - 10.0 * sd);
  while (gamma_log_sf(g, lo) < lt) lo *= 0.25;
  return newton_on_log([&](double x) { return gamma_log_sf(g, x); },
                       [&](double x) { return -std::exp(gamma_log_pdf(g, x) - gamma_log_sf(g, x)); },
                       lo, hi, lt, false, "gamma_quantile");
}

double ncx2_log_pdf(const NoncentralChi2Params& p, double y) {
  check_ncx2(p, "ncx2_log_pdf");
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("ncx2_log_pdf: y must be positive finite");
  const double half_dof = 0.5 * double(p.dof);
  const double nu = 0.5 * p.noncentrality;
  if (nu == 0.0) return central_chi2_log_pdf(half_dof, y);

  // Poisson mixture of central pdfs with dof + 2j degrees of freedom. Terms
  // are log-concave in j, so expanding from the modal Poisson index until
  // the geometric tail bound certifies the cut is safe in both directions.
  const double lhy = std::log(0.5 * y);
  const std::int64_t jstar = std::int64_t(nu);
  auto term_at = [&](std::int64_t j) {
    return pois_log_pmf(nu, j) + central_chi2_log_pdf(half_dof + double(j), y);
  };
  // Step from term j to j+1 in O(1).
  auto up_delta = [&](std::int64_t j) {
    return std::log(nu) - std::log(double(j) + 1.0) + lhy - std::log(half_dof + double(j));
  };

  double acc = term_at(jstar);
  // Upward sweep; once terms decay (d < 0), log-concavity makes the decay
  // ratio shrink further, so t * r / (1 - r) bounds everything discarded.
  double t = acc;
  for (std::int64_t j = jstar;; ++j) {
    const double d = up_delta(j);
    t += d;
    acc = detail::log_add(acc, t);
    if (d < 0.0) {
      const double tail_bound = t + d - detail::log1mexp(std::min(-1e-300, d));
      if (tail_bound <= acc + kCertLog) break;
    }
    if (j > jstar + 100000000L) throw ConvergenceError("ncx2_log_pdf: mixture did not truncate");
  }
  // Downward sweep, same certificate, bounded by j = 0.
  t = term_at(jstar);
  for (std::int64_t j = jstar; j > 0; --j) {
    const double d = -up_delta(j - 1);  // term(j-1) - term(j)
    t += d;
    acc = detail::log_add(acc, t);
    if (d < 0.0) {
      const double tail_bound = t + d - detail::log1mexp(std::min(-1e-300, d));
      if (tail_bound <= acc + kCertLog) break;
    }
  }
  return acc;
}

double ncx2_log_cdf(const NoncentralChi2Params& p, double x) {
  check_ncx2(p, "ncx2_log_cdf");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("ncx2_log_cdf: x must be nonnegative finite");
  if (x == 0.0) return kNegInf;
  const double a0 = 0.5 * double(p.dof);
  const double xh = 0.5 * x;
  const double nu = 0.5 * p.noncentrality;
  if (nu == 0.0) return log_gamma_p(a0, xh);

  // The lower mixture components P(a0 + j, xh) decrease in j, so cutting the
  // sum at J keeps relative error below the Poisson mass ratio beyond J.
  // One direct evaluation at J, then the downward recurrence
  //   P(a-1, x) = P(a, x) + x^(a-1) e^-x / Gamma(a)
  // walks to j = 0 with O(1) work per step.
  const std::int64_t J = pois_upper_quantile(nu, kPreselectLog);
  const double lxh = std::log(xh);
  double logP = log_gamma_p(a0 + double(J), xh);
  double logw = pois_log_pmf(nu, J);
  double acc = logw + logP;
  double logt = (a0 + double(J) - 1.0) * lxh - xh - std::lgamma(a0 + double(J));
  for (std::int64_t j = J; j > 0; --j) {
    logP = detail::log_add(logP, logt);         // now P at a0 + j - 1
    logt += std::log(a0 + double(j) - 1.0) - lxh;  // t for the next step down
    logw += std::log(double(j)) - std::log(nu);    // Poisson pmf at j - 1
    acc = detail::log_add(acc, logw + logP);
    if (pois_lower_tail_log(nu, double(j) - 2.0) <= acc + kCertLog) break;
  }
  return std::min(acc, 0.0);
}

double ncx2_log_sf(const NoncentralChi2Params& p, double x) {
  check_ncx2(p, "ncx2_log_sf");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("ncx2_log_sf: x must be nonnegative finite");
  if (x == 0.0) return 0.0;
  const double a0 = 0.5 * double(p.dof);
  const double xh = 0.5 * x;
  const double nu = 0.5 * p.noncentrality;
  if (nu == 0.0) return log_gamma_q(a0, xh);

  // Survival components Q(a0 + j, xh) increase in j, never exceeding one, so
  // the sum is cut when the remaining Poisson mass alone drops below the
  // certificate. Upward recurrence Q(a+1, x) = Q(a, x) + x^a e^-x / Gamma(a+1)
  // from one direct evaluation at the lower Poisson quantile.
  const std::int64_t j_lo = pois_lower_quantile(nu, kPreselectLog);
  const double lxh = std::log(xh);
  double a = a0 + double(j_lo);
  double logQ = log_gamma_q(a, xh);
  double logw = pois_log_pmf(nu, j_lo);
  double acc = logw + logQ;
  double logt = a * lxh - xh - std::lgamma(a + 1.0);  // t(a): Q(a+1) = Q(a) + t(a)
  const std::int64_t cap = j_lo + 50000000L;
  for (std::int64_t j = j_lo;; ++j) {
    if (pois_upper_tail_log(nu, double(j) + 1.0) <= acc + kCertLog) break;
    if (j >= cap) throw ConvergenceError("ncx2_log_sf: mixture did not truncate");
    logQ = detail::log_add(logQ, logt);
    logt += lxh - std::log(a + 1.0);
    a += 1.0;
    logw += std::log(nu) - std::log(double(j) + 1.0);
    acc = detail::log_add(acc, logw + logQ);
  }
  return std::min(acc, 0.0);
}

double ncx2_quantile(const NoncentralChi2Params& p, double q) {
  check_ncx2(p, "ncx2_quantile");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("ncx2_quantile: q must lie in (0, 1)");
  const double mean = double(p.dof) + p.noncentrality;
  const double sd = std::sqrt(2.0 * (double(p.dof) + 2.0 * p.noncentrality));
  auto dlog_cdf = [&](double x) {
    return std::exp(ncx2_log_pdf(p, x) - ncx2_log_cdf(p, x));
  };
  auto dlog_sf = [&](double x) {
    return -std::exp(ncx2_log_pdf(p, x) - ncx2_log_sf(p, x));
  };
  if (q <= 0.5) {
    const double lq = std::log(q);
    double lo = std::max(1e-300, mean - 10.0 * sd);
    while (ncx2_log_cdf(p, lo) > lq) lo *= 0.25;
    double hi = mean + 10.0 * sd;
    while (ncx2_log_cdf(p, hi) < lq) hi *= 2.0;
    return newton_on_log([&](double x) { return ncx2_log_cdf(p, x); }, dlog_cdf, lo, hi, lq,
                         true, "ncx2_quantile");
  }
  const double lt = detail::log1mexp(std::log(q));
  double hi = mean + 10.0 * sd;
  while (ncx2_log_sf(p, hi) > lt) hi *= 2.0;
  double lo = std::max(1e-300, mean - 10.0 * sd);
  while (ncx2_log_sf(p, lo) < lt) lo *= 0.25;
  return newton_on_log([&](double x) { return ncx2_log_sf(p, x); }, dlog_sf, lo, hi, lt,
                       false, "ncx2_quantile");
}

}  // namespace rcbound
