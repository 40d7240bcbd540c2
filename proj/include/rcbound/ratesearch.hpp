#pragma once

#include <cstdint>
#include <vector>

#include "rcbound/bounds.hpp"

// Inverts a bound in the ensemble size: the largest rate (bits per channel
// use) whose predicted error probability stays at or below a target. The
// bounds are nondecreasing in the codebook size, so bisection over log2(m)
// applies; the search works with real-valued m and can round down to an
// integer codebook on request.

namespace rcbound {

struct RateSearchConfig {
  double rate_tol = 1e-6;  // bracket width target, bits per channel use
  bool integer_m = false;  // round the found m down to an integer
  QuadratureConfig quad;   // forwarded to AWGN evaluations
};

struct RateCurveRow {
  ChannelSpec channel = ChannelSpec::bsc(0.1);
  std::int64_t n = 0;
  double epsilon_target = 0.0;
  Method method = Method::rc;

  double rate = 0.0;    // log2_m / n at the feasible bracket end
  double log2_m = 0.0;
  double achieved_log_epsilon = kNegInf;  // bound at the returned log2_m
  double err_est = 0.0;

  // Bisection witness: bound(bracket_lo) <= target < bound(bracket_hi)
  // (up to err_est), with bracket_hi - bracket_lo <= n * rate_tol.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double log_eps_lo = kNegInf;
  double log_eps_hi = kNegInf;

  unsigned flags = kFlagNone;
};

RateCurveRow max_rate(const ChannelSpec& spec, std::int64_t n, double epsilon_target,
                      Method method, const RateSearchConfig& cfg = {});

struct SweepSpec {
  ChannelSpec channel = ChannelSpec::bsc(0.1);
  std::vector<std::int64_t> n_grid;
  double epsilon_target = 1e-3;
  std::vector<Method> methods;
  RateSearchConfig config;
};

// One row per (n, method), in grid order. Cell failures are recorded in the
// row flags; a single bad cell never aborts the sweep. With jobs > 1 cells
// run on a small thread pool; output order and content do not depend on it.
std::vector<RateCurveRow> sweep(const SweepSpec& spec, int jobs = 1);

}  // namespace rcbound
