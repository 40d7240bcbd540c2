#pragma once

#include <cstdint>

#include "rcbound/logdomain.hpp"

// The per-observation decoding kernel. Condition on the transmitted word's
// channel realization; let w be the probability that one independent
// competitor lands at exactly the same distance from the received word (a
// tie, resolved uniformly) and z the probability it lands strictly farther.
// With m codewords total, the probability that the transmitted word wins is
//
//     ((w + z)^m - z^m) / (w m)
//
// which this module evaluates in log domain for real m as large as 2^(10^6),
// alongside its w -> 0 limit z^(m-1) and an independent finite-sum form used
// as a cross-checking oracle.

namespace rcbound {

// Tie/strictly-farther probability pair for one competitor. Requires
// w + z <= 1 (up to 1e-12 slack); violating that is an InvariantViolation.
class TieMass {
 public:
  TieMass(LogReal w, LogReal z);
  LogReal w() const { return w_; }
  LogReal z() const { return z_; }
  double log_w() const { return w_.log(); }
  double log_z() const { return z_.log(); }
  double log_wz() const { return log_wz_; }  // log(w + z), cancellation-free

 private:
  LogReal w_, z_;
  double log_wz_;
};

// Codebook size m = 2^(log2_m), held in the log2 domain so ensembles like
// 2^500 keep full precision. log2_m is real and >= 0.
class EnsembleSize {
 public:
  explicit EnsembleSize(double log2_m);
  static EnsembleSize from_count(double m);  // m >= 1

  double log2_m() const { return log2_m_; }
  double log_m() const { return log_m_; }
  // log(m - 1); -inf when m == 1. Above 2^60 the -1 is below double
  // rounding and log m is returned unchanged.
  double log_m_minus_1() const { return log_m_minus_1_; }
  bool is_one() const { return log2_m_ == 0.0; }

  // x * m and x * (m - 1) for x of either sign, computed through logs when m
  // is too large for a double. Saturates to +/-inf only when the true value
  // overflows.
  double scale_by_m(double x) const;
  double scale_by_m_minus_1(double x) const;

 private:
  double log2_m_, log_m_, log_m_minus_1_;
};

// Log-probability that the transmitted word wins against m - 1 independent
// competitors, each tying with probability w and losing with probability z.
// Exact closed form; switches to the continuous kernel when w is below
// 1e-14 * (w + z), where the two agree beyond double rounding.
LogReal correct_prob_kernel(const TieMass& t, const EnsembleSize& m);

// The w -> 0 limit: z^(m-1). Used directly by continuous channels, where
// ties have probability zero.
LogReal continuous_kernel(LogReal z, const EnsembleSize& m);

// Independent oracle: sum_{l=0}^{m-1} C(m-1, l)/(1+l) w^l z^(m-1-l),
// i.e. the win probability decomposed over the number of tying competitors.
// Integer m only; m above 2^20 is refused (SizeExceeded).
LogReal direct_sum_kernel(const TieMass& t, std::int64_t m);

}  // namespace rcbound
