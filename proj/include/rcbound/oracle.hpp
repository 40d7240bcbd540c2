#pragma once

#include <cstdint>

#include "rcbound/bounds.hpp"
#include "rcbound/logdomain.hpp"

// Independent cross-checks for the closed forms: per-term finite-sum
// reconstructions built on the direct-sum kernel, brute-force Monte Carlo of
// the actual coding experiment (fresh random codebook every trial,
// minimum-distance decoding, uniform tie breaking), and a Monte Carlo
// estimate of the AWGN integral via its distributional decomposition. These
// paths deliberately share as little arithmetic as possible with the bound
// evaluators they check.

namespace rcbound {

// Exact ensemble averages assembled per channel realization from the
// direct-sum kernel. Small-instance guards: n <= 20, 1 <= m <= 256.
LogReal rc_direct_bsc(double delta, std::int64_t n, std::int64_t m);
LogReal rc_direct_bec(double delta, std::int64_t n, std::int64_t m);

struct SimConfig {
  ChannelSpec channel = ChannelSpec::bsc(0.1);
  std::int64_t n = 4;
  std::int64_t m = 2;          // integer codebook size; n <= 24, m <= 4096
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct SimResult {
  double error_rate = 0.0;
  double std_error = 0.0;  // binomial standard error sqrt(p(1-p)/trials)
  std::int64_t errors = 0;
  std::int64_t trials = 0;
};

// Simulates the full ensemble experiment. Trials are split over a fixed
// number of shards with seeds derived from (seed, shard); shard results are
// combined in shard order, so the outcome is a pure function of the config.
SimResult simulate_ensemble(const SimConfig& cfg);

struct McIntegralResult {
  double epsilon = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

// Monte Carlo of the AWGN error integral: draws the transmitted word's
// noise radius, then a competitor-relevant radius from its conditional
// distribution, and averages 1 - (1 - F)^(m-1) evaluated in log domain.
// Shares the distance distributions with the exact path but none of the
// quadrature machinery.
McIntegralResult mc_integral_awgn(double gamma, std::int64_t n, const EnsembleSize& m,
                                  std::int64_t samples, std::uint64_t seed);

}  // namespace rcbound
