#include "rcbound/ratesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rcbound/parallel.hpp"

namespace rcbound {

namespace {

struct Sample {
  double log2_m;
  double log_eps;
  double err_est;
};

// Non-monotone pairs beyond the evaluators' own error estimates indicate a
// real defect, so they are surfaced as a flag on the row.
bool monotone_violation(std::vector<Sample> samples) {
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.log2_m < b.log2_m; });
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const Sample& a = samples[i];
    const Sample& b = samples[i + 1];
    if (a.log2_m == b.log2_m) continue;
    const double ea = std::exp(a.log_eps);
    const double eb = std::exp(b.log_eps);
    if (ea > eb + a.err_est + b.err_est + 1e-15) return true;
  }
  return false;
}

}  // namespace

RateCurveRow max_rate(const ChannelSpec& spec, std::int64_t n, double epsilon_target,
                      Method method, const RateSearchConfig& cfg) {
  if (n < 1) throw DomainError("max_rate: n must be >= 1");
  if (!(epsilon_target > 0.0 && epsilon_target < 1.0)) {
    throw DomainError("max_rate: epsilon_target must be in (0, 1)");
  }
  if (!(cfg.rate_tol > 0.0)) throw DomainError("max_rate: rate_tol must be positive");

  RateCurveRow row;
  row.channel = spec;
  row.n = n;
  row.epsilon_target = epsilon_target;
  row.method = method;

  const double log_target = std::log(epsilon_target);
  const double cap = spec.channel == Channel::awgn ? 2.0 * double(n) : double(n);
  std::vector<Sample> samples;

  auto eval = [&](double log2_m) {
    const BoundResult r = evaluate_bound(spec, n, EnsembleSize(log2_m), method, cfg.quad);
    samples.push_back({log2_m, r.log_epsilon.log(), r.err_est});
    row.flags |= r.flags & (kFlagDepthExceeded | kFlagComplementGuard);
    return r;
  };

  // m = 1 never errs, so the lower bracket end is always feasible.
  double lo = 0.0;
  double log_eps_lo = kNegInf;
  double err_lo = 0.0;

  BoundResult at_cap = eval(cap);
  double hi = cap;
  double log_eps_hi = at_cap.log_epsilon.log();
  double err_hi = at_cap.err_est;

  if (log_eps_hi <= log_target) {
    // Feasible all the way out; report the cap itself.
    row.flags |= kFlagAtRateCap;
    lo = cap;
    log_eps_lo = log_eps_hi;
    err_lo = err_hi;
  } else {
    const double width_target = double(n) * cfg.rate_tol;
    while (hi - lo > width_target) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;  // bracket at double resolution
      const BoundResult r = eval(mid);
      if (r.log_epsilon.log() <= log_target) {
        lo = mid;
        log_eps_lo = r.log_epsilon.log();
        err_lo = r.err_est;
      } else {
        hi = mid;
        log_eps_hi = r.log_epsilon.log();
        err_hi = r.err_est;
      }
    }
  }

  row.bracket_lo = lo;
  row.bracket_hi = hi;
  row.log_eps_lo = log_eps_lo;
  row.log_eps_hi = log_eps_hi;

  double chosen = lo;
  double achieved = log_eps_lo;
  double achieved_err = err_lo;
  if (cfg.integer_m && lo <= 53.0) {
    const double m_int = std::floor(std::exp2(lo));
    if (m_int < 2.0) {
      row.flags |= kFlagNoFeasibleRate;
      chosen = 0.0;
      achieved = kNegInf;
      achieved_err = 0.0;
    } else {
      chosen = std::log2(m_int);
      if (chosen != lo) {
        const BoundResult r = eval(chosen);
        achieved = r.log_epsilon.log();
        achieved_err = r.err_est;
      }
    }
  }

  row.log2_m = chosen;
  row.rate = chosen / double(n);
  row.achieved_log_epsilon = achieved;
  row.err_est = achieved_err;
  if (monotone_violation(samples)) row.flags |= kFlagMonotonicityViolation;
  return row;
}

std::vector<RateCurveRow> sweep(const SweepSpec& spec, int jobs) {
  const std::int64_t cells =
      std::int64_t(spec.n_grid.size()) * std::int64_t(spec.methods.size());
  std::vector<RateCurveRow> rows(static_cast<size_t>(cells));
  parallel_for(jobs, cells, [&](std::int64_t idx) {
    const std::int64_t n = spec.n_grid[size_t(idx) / spec.methods.size()];
    const Method method = spec.methods[size_t(idx) % spec.methods.size()];
    RateCurveRow& row = rows[size_t(idx)];
    try {
      row = max_rate(spec.channel, n, spec.epsilon_target, method, spec.config);
    } catch (const std::exception&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row = RateCurveRow{};
      row.channel = spec.channel;
      row.n = n;
      row.epsilon_target = spec.epsilon_target;
      row.method = method;
      row.rate = nan;
      row.log2_m = nan;
      row.achieved_log_epsilon = nan;
      row.err_est = nan;
      row.bracket_lo = nan;
      row.bracket_hi = nan;
      row.log_eps_lo = nan;
      row.log_eps_hi = nan;
      row.flags = kFlagEvalFailed;
    }
  });
  return rows;
}

}  // namespace rcbound
