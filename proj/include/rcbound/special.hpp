#pragma once

#include <cstdint>

#include "rcbound/logdomain.hpp"

// Log-domain special functions: regularized incomplete gamma, gamma and
// noncentral chi-square densities/CDFs/survival functions, and quantiles.
// Every routine returns natural-log values so deep tails (1e-100000 and
// below) stay representable. Degrees of freedom are integer; noncentrality
// and all other parameters are real.

namespace rcbound {

struct GammaParams {
  double shape;  // kappa > 0
  double scale;  // theta > 0
};

struct NoncentralChi2Params {
  std::int64_t dof;      // kappa >= 1, integer
  double noncentrality;  // lambda >= 0
};

// log P(a, x) (regularized lower incomplete gamma) and log Q(a, x) (upper).
// Series below x < a+1, continued fraction above; both carried in log space
// so results are relatively accurate even at |log| in the hundreds of
// thousands. a > 0, x >= 0.
double log_gamma_p(double a, double x);
double log_gamma_q(double a, double x);

// Gamma(shape, scale) density / CDF / survival, as log values. x >= 0.
double gamma_log_pdf(const GammaParams& g, double x);
double gamma_log_cdf(const GammaParams& g, double x);
double gamma_log_sf(const GammaParams& g, double x);

// Inverse CDF. Bisection-safeguarded Newton on the log-CDF (log-SF for
// q > 1/2); the returned x round-trips through the CDF to ~1e-10 relative.
double gamma_quantile(const GammaParams& g, double q);

// Noncentral chi-square with integer dof, evaluated as a Poisson mixture of
// central chi-square terms. Truncation of the mixture is certified: the
// discarded weight is bounded by a Poisson tail estimate kept below 1e-25 of
// the returned value.
double ncx2_log_pdf(const NoncentralChi2Params& p, double y);
double ncx2_log_cdf(const NoncentralChi2Params& p, double x);
double ncx2_log_sf(const NoncentralChi2Params& p, double x);
double ncx2_quantile(const NoncentralChi2Params& p, double q);

}  // namespace rcbound
