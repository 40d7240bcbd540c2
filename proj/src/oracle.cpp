#include "rcbound/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rcbound/parallel.hpp"
#include "rcbound/rckernel.hpp"
#include "rcbound/rng.hpp"
#include "rcbound/special.hpp"

namespace rcbound {

namespace {

constexpr int kShards = 64;
// Stream tags keep the two Monte Carlo consumers decorrelated even under
// identical user seeds.
constexpr std::uint64_t kStreamSim = 0;
constexpr std::uint64_t kStreamMcIntegral = 1;

std::vector<std::uint64_t> pascal_row(std::int64_t n) {
  std::vector<std::uint64_t> c(size_t(n) + 1, 1);
  for (std::int64_t i = 1; i <= n; ++i) {
    for (std::int64_t j = i - 1; j >= 1; --j) c[size_t(j)] += c[size_t(j) - 1];
  }
  return c;
}

std::int64_t shard_count(std::int64_t total, int shard) {
  return total / kShards + (shard < total % kShards ? 1 : 0);
}

}  // namespace

LogReal rc_direct_bsc(double delta, std::int64_t n, std::int64_t m) {
  ChannelSpec::bsc(delta);
  if (n < 1 || n > 20) throw DomainError("rc_direct_bsc: n must be in [1, 20]");
  if (m < 1 || m > 256) throw DomainError("rc_direct_bsc: m must be in [1, 256]");
  const std::vector<std::uint64_t> c = pascal_row(n);
  // Exact dyadic weights: tails of the binomial row over 2^n.
  std::vector<std::uint64_t> tail(size_t(n) + 2, 0);
  for (std::int64_t i = n; i >= 0; --i) tail[size_t(i)] = tail[size_t(i) + 1] + c[size_t(i)];
  const double scale = std::ldexp(1.0, -int(n));
  long double correct = 0.0L;
  for (std::int64_t i = 0; i <= n; ++i) {
    const TieMass t(LogReal::from_linear(double(c[size_t(i)]) * scale),
                    LogReal::from_linear(double(tail[size_t(i) + 1]) * scale));
    const LogReal k = direct_sum_kernel(t, m);
    const long double pmf = double(c[size_t(i)]) * powl((long double)delta, i) *
                            powl(1.0L - (long double)delta, n - i);
    correct += pmf * expl((long double)k.log());
  }
  const long double eps = std::clamp(1.0L - correct, 0.0L, 1.0L);
  return LogReal::from_linear(double(eps));
}

LogReal rc_direct_bec(double delta, std::int64_t n, std::int64_t m) {
  ChannelSpec::bec(delta);
  if (n < 1 || n > 20) throw DomainError("rc_direct_bec: n must be in [1, 20]");
  if (m < 1 || m > 256) throw DomainError("rc_direct_bec: m must be in [1, 256]");
  const std::vector<std::uint64_t> c = pascal_row(n);
  long double correct = 0.0L;
  for (std::int64_t i = 0; i <= n; ++i) {  // i erased positions
    const double w = std::ldexp(1.0, -int(n - i));
    const TieMass t(LogReal::from_linear(w), LogReal::from_linear(1.0 - w));
    const LogReal k = direct_sum_kernel(t, m);
    const long double pmf = double(c[size_t(i)]) * powl((long double)delta, i) *
                            powl(1.0L - (long double)delta, n - i);
    correct += pmf * expl((long double)k.log());
  }
  const long double eps = std::clamp(1.0L - correct, 0.0L, 1.0L);
  return LogReal::from_linear(double(eps));
}

namespace {

std::int64_t run_shard_bsc(const SimConfig& cfg, Rng& rng, std::int64_t trials) {
  const std::uint32_t mask = (std::uint32_t(1) << cfg.n) - 1;
  const double delta = cfg.channel.param;
  const std::size_t m = std::size_t(cfg.m);
  std::vector<std::uint32_t> cw(m);
  std::int64_t errors = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    for (std::size_t j = 0; j < m; ++j) cw[j] = std::uint32_t(rng.next_u64()) & mask;
    const std::size_t t = std::size_t(rng.below(m));
    std::uint32_t flips = 0;
    for (std::int64_t b = 0; b < cfg.n; ++b) {
      flips |= std::uint32_t(rng.bernoulli(delta)) << b;
    }
    const std::uint32_t received = cw[t] ^ flips;
    int best = 1 << 30;
    std::uint64_t ties = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const int d = std::popcount(cw[j] ^ received);
      if (d < best) { best = d; ties = 1; } else if (d == best) { ++ties; }
    }
    const bool tx_at_min = std::popcount(cw[t] ^ received) == best;
    const bool correct = tx_at_min && (ties == 1 || rng.below(ties) == 0);
    errors += correct ? 0 : 1;
  }
  return errors;
}

std::int64_t run_shard_bec(const SimConfig& cfg, Rng& rng, std::int64_t trials) {
  const std::uint32_t mask = (std::uint32_t(1) << cfg.n) - 1;
  const double delta = cfg.channel.param;
  const std::size_t m = std::size_t(cfg.m);
  std::vector<std::uint32_t> cw(m);
  std::int64_t errors = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    for (std::size_t j = 0; j < m; ++j) cw[j] = std::uint32_t(rng.next_u64()) & mask;
    const std::size_t t = std::size_t(rng.below(m));
    std::uint32_t erased = 0;
    for (std::int64_t b = 0; b < cfg.n; ++b) {
      erased |= std::uint32_t(rng.bernoulli(delta)) << b;
    }
    // Distance = mismatches on revealed positions; the transmitted word is
    // always at distance 0, so only words matching it there can tie.
    const std::uint32_t revealed = mask & ~erased;
    std::uint64_t ties = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (((cw[j] ^ cw[t]) & revealed) == 0) ++ties;
    }
    const bool correct = ties == 1 || rng.below(ties) == 0;
    errors += correct ? 0 : 1;
  }
  return errors;
}

std::int64_t run_shard_awgn(const SimConfig& cfg, Rng& rng, std::int64_t trials) {
  const double sd = 1.0 / std::sqrt(cfg.channel.param);
  const std::size_t m = std::size_t(cfg.m);
  const std::size_t n = std::size_t(cfg.n);
  std::vector<double> cw(m * n);
  std::vector<double> y(n);
  std::int64_t errors = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    for (double& v : cw) v = rng.normal();
    const std::size_t t = std::size_t(rng.below(m));
    for (std::size_t i = 0; i < n; ++i) y[i] = cw[t * n + i] + sd * rng.normal();
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t ties = 0;
    double dist_t = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - cw[j * n + i];
        d += r * r;
      }
      if (j == t) dist_t = d;
      if (d < best) { best = d; ties = 1; } else if (d == best) { ++ties; }
    }
    const bool correct = dist_t == best && (ties == 1 || rng.below(ties) == 0);
    errors += correct ? 0 : 1;
  }
  return errors;
}

}  // namespace

SimResult simulate_ensemble(const SimConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 24) throw DomainError("simulate_ensemble: n must be in [1, 24]");
  if (cfg.m < 1 || cfg.m > 4096) throw DomainError("simulate_ensemble: m must be in [1, 4096]");
  if (cfg.trials < 1) throw DomainError("simulate_ensemble: trials must be >= 1");
  switch (cfg.channel.channel) {
    case Channel::bsc: ChannelSpec::bsc(cfg.channel.param); break;
    case Channel::bec: ChannelSpec::bec(cfg.channel.param); break;
    case Channel::awgn: ChannelSpec::awgn(cfg.channel.param); break;
  }

  std::vector<std::int64_t> shard_errors(kShards, 0);
  const unsigned hw = std::thread::hardware_concurrency();
  parallel_for(int(std::max(1u, hw)), kShards, [&](int shard) {
    const std::int64_t trials = shard_count(cfg.trials, shard);
    if (trials == 0) return;
    Rng rng(derive_seed(cfg.seed, kStreamSim, std::uint64_t(shard)));
    switch (cfg.channel.channel) {
      case Channel::bsc: shard_errors[size_t(shard)] = run_shard_bsc(cfg, rng, trials); break;
      case Channel::bec: shard_errors[size_t(shard)] = run_shard_bec(cfg, rng, trials); break;
      case Channel::awgn: shard_errors[size_t(shard)] = run_shard_awgn(cfg, rng, trials); break;
    }
  });

  SimResult out;
  out.trials = cfg.trials;
  for (int s = 0; s < kShards; ++s) out.errors += shard_errors[size_t(s)];
  out.error_rate = double(out.errors) / double(out.trials);
  out.std_error =
      std::sqrt(out.error_rate * (1.0 - out.error_rate) / double(out.trials));
  return out;
}

McIntegralResult mc_integral_awgn(double gamma, std::int64_t n, const EnsembleSize& m,
                                  std::int64_t samples, std::uint64_t seed) {
  ChannelSpec::awgn(gamma);
  if (n < 1 || n > 1000000) throw DomainError("mc_integral_awgn: n must be in [1, 1e6]");
  if (samples < 2) throw DomainError("mc_integral_awgn: samples must be >= 2");

  struct Acc { long double sum = 0.0L, sum_sq = 0.0L; };
  std::vector<Acc> acc(kShards);
  const unsigned hw = std::thread::hardware_concurrency();
  parallel_for(int(std::max(1u, hw)), kShards, [&](int shard) {
    const std::int64_t count = shard_count(samples, shard);
    if (count == 0) return;
    Rng rng(derive_seed(seed, kStreamMcIntegral, std::uint64_t(shard)));
    Acc a;
    for (std::int64_t s = 0; s < count; ++s) {
      // Squared radius of the noise, then a competitor's squared distance to
      // the received point given that radius.
      double x = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        const double g = rng.normal();
        x += g * g;
      }
      x /= gamma;
      const double u1 = rng.normal() + std::sqrt(x);
      double y = u1 * u1;
      for (std::int64_t i = 1; i < n; ++i) {
        const double g = rng.normal();
        y += g * g;
      }
      const double lsf = ncx2_log_sf(NoncentralChi2Params{n, y}, x);
      const double b = -std::expm1(std::min(0.0, m.scale_by_m_minus_1(lsf)));
      a.sum += b;
      a.sum_sq = a.sum_sq + (long double)b * b;
    }
    acc[size_t(shard)] = a;
  });

  long double sum = 0.0L, sum_sq = 0.0L;
  for (int s = 0; s < kShards; ++s) {
    sum += acc[size_t(s)].sum;
    sum_sq += acc[size_t(s)].sum_sq;
  }
  McIntegralResult out;
  out.samples = samples;
  const long double mean = sum / (long double)samples;
  const long double var =
      std::max(0.0L, (sum_sq / (long double)samples - mean * mean)) *
      (long double)samples / (long double)(samples - 1);
  out.epsilon = double(mean);
  out.std_error = double(sqrtl(var / (long double)samples));
  return out;
}

}  // namespace rcbound
