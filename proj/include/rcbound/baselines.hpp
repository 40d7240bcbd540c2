#pragma once

#include <cstdint>

#include "rcbound/bounds.hpp"

// Classical finite-blocklength baselines for the binary erasure channel,
// provided for calibration plots and ordering checks against the exact
// ensemble average. All three are exact finite sums over the erasure count.

namespace rcbound {

// Random-coding union achievability: per erasure count i,
// min(1, (m-1) 2^-(n-i)), weighted by the erasure-count pmf.
BoundResult bec_rcu(double delta, std::int64_t n, const EnsembleSize& m);

// Dependence-testing achievability: same shape with (m-1)/2 in place of m-1.
BoundResult bec_dt(double delta, std::int64_t n, const EnsembleSize& m);

// Converse: every code with m messages has error probability at least
// sum_i C(n,i) delta^i (1-delta)^(n-i) max(0, 1 - 2^(n-i)/m).
BoundResult bec_converse(double delta, std::int64_t n, const EnsembleSize& m);

}  // namespace rcbound
