#pragma once

#include <cstdint>
#include <string>

#include "rcbound/logdomain.hpp"
#include "rcbound/quadrature.hpp"
#include "rcbound/rckernel.hpp"

// Ensemble-average error probability of random coding under minimum-distance
// decoding, for three channels:
//
//   BSC(delta):  codewords i.i.d. uniform on {0,1}^n, exact finite sum.
//   BEC(delta):  same codebook model, exact finite sum.
//   AWGN(gamma): codewords i.i.d. N(0, I_n) (the power constraint holds on
//                ensemble average, not per codeword), unit-SNR-normalized
//                noise variance 1/gamma; exact value is a 2D integral over
//                the conditional distance distributions, evaluated by
//                adaptive quadrature, plus closed sandwich bounds that
//                bracket it from both sides.

namespace rcbound {

enum class Channel { bsc, bec, awgn };

// Channel family plus its single noise parameter: crossover probability
// delta in [0, 1/2] for the BSC, erasure probability delta in [0, 1] for the
// BEC, SNR gamma > 0 for the AWGN channel.
struct ChannelSpec {
  Channel channel;
  double param;

  static ChannelSpec bsc(double delta);
  static ChannelSpec bec(double delta);
  static ChannelSpec awgn(double gamma);
};

enum class Method {
  rc,           // exact ensemble average
  awgn_upper,   // AWGN upper bracket: min(1, (m-1) F)
  awgn_lower,   // AWGN lower bracket: 1 - 1/(1 - (m-1) log(1 - F))
  bec_rcu,      // BEC baselines (see baselines.hpp)
  bec_dt,
  bec_converse,
};

std::string method_name(Method m);

// Non-fatal result qualifiers, OR-able.
enum ResultFlags : unsigned {
  kFlagNone = 0,
  kFlagDepthExceeded = 1u << 0,       // quadrature hit a cap before tolerance
  kFlagComplementGuard = 1u << 1,     // epsilon clamped at 0: below the noise floor
  kFlagNoFeasibleRate = 1u << 2,      // rate search: no ensemble meets the target
  kFlagMonotonicityViolation = 1u << 3,  // rate search saw non-monotone samples
  kFlagAtRateCap = 1u << 4,           // rate search saturated its bracket cap
  kFlagEvalFailed = 1u << 5,          // sweep cell threw; numeric fields are NaN
};

std::string flags_to_string(unsigned flags);

struct BoundDiagnostics {
  std::int64_t terms = 0;  // finite-sum terms (discrete channels)
  std::int64_t cells = 0;  // quadrature cells (AWGN)
};

struct BoundResult {
  LogReal log_epsilon;
  double err_est = 0.0;
  Method method = Method::rc;
  unsigned flags = kFlagNone;
  BoundDiagnostics diag;
};

// Exact ensemble averages. Discrete channels fold the per-realization loss
// probabilities as an all-positive finite sum, so epsilon keeps full
// relative precision however small it is; err_est is the absolute rounding
// bound that implies. The AWGN value integrates to the configured quadrature
// tolerance and reports err_est = quadrature error + 2*tail_mass.
BoundResult bsc_rc(double delta, std::int64_t n, const EnsembleSize& m);
BoundResult bec_rc(double delta, std::int64_t n, const EnsembleSize& m);
BoundResult awgn_rc_exact(double gamma, std::int64_t n, const EnsembleSize& m,
                          const QuadratureConfig& cfg = {});

// Closed-form AWGN sandwich: upper/lower brackets around the exact kernel,
// each a single 2D integral of the same densities.
BoundResult awgn_rc_upper(double gamma, std::int64_t n, const EnsembleSize& m,
                          const QuadratureConfig& cfg = {});
BoundResult awgn_rc_lower(double gamma, std::int64_t n, const EnsembleSize& m,
                          const QuadratureConfig& cfg = {});

// Dispatch by channel/method; Method::rc picks the exact evaluator for the
// channel, baseline methods require a BEC spec.
BoundResult evaluate_bound(const ChannelSpec& spec, std::int64_t n, const EnsembleSize& m,
                           Method method, const QuadratureConfig& cfg = {});

}  // namespace rcbound
