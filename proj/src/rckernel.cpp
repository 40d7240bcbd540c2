#include "rcbound/rckernel.hpp"

#include <algorithm>
#include <cmath>

namespace rcbound {

namespace {
// Below this fraction of w + z, the tie mass is invisible next to double
// rounding in the closed form and the continuous limit takes over.
const double kTieNegligibleLog = std::log(1e-14);
constexpr std::int64_t kDirectSumCap = std::int64_t(1) << 20;

// Compensated accumulator; the error of value() stays near one rounding of
// the final result even when intermediate partial sums are orders larger.
struct NeumaierSum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    const double t = s + v;
    c += (std::fabs(s) >= std::fabs(v)) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};
}  // namespace

TieMass::TieMass(LogReal w, LogReal z) : w_(w), z_(z) {
  const double lw = w.log(), lz = z.log();
  if (lw == kNegInf) {
    log_wz_ = lz;
  } else if (lz == kNegInf) {
    log_wz_ = lw;
  } else if (lz >= lw) {
    log_wz_ = lz + std::log1p(std::exp(lw - lz));
  } else {
    log_wz_ = lw + std::log1p(std::exp(lz - lw));
  }
  if (log_wz_ > 1e-12) throw InvariantViolation("TieMass: w + z exceeds 1");
  log_wz_ = std::min(log_wz_, 0.0);  // trim the rounding slack
}

EnsembleSize::EnsembleSize(double log2_m) {
  if (!(log2_m >= 0.0) || !std::isfinite(log2_m)) {
    throw DomainError("EnsembleSize: log2_m must be nonnegative finite");
  }
  log2_m_ = log2_m;
  log_m_ = log2_m * std::log(2.0);
  if (log2_m == 0.0) {
    log_m_minus_1_ = kNegInf;
  } else if (log2_m > 60.0) {
    // 1/m is below the rounding of log m; the -1 is invisible.
    log_m_minus_1_ = log_m_;
  } else {
    log_m_minus_1_ = log_m_ + std::log1p(-std::exp(-log_m_));
  }
}

EnsembleSize EnsembleSize::from_count(double m) {
  if (!(m >= 1.0) || !std::isfinite(m)) throw DomainError("EnsembleSize: count must be >= 1");
  return EnsembleSize(std::log2(m));
}

double EnsembleSize::scale_by_m(double x) const {
  if (x == 0.0) return 0.0;
  if (log2_m_ <= 60.0) return x * std::exp2(log2_m_);
  const double r = std::exp(log_m_ + std::log(std::fabs(x)));
  return x > 0.0 ? r : -r;
}

double EnsembleSize::scale_by_m_minus_1(double x) const {
  if (is_one() || x == 0.0) return 0.0;
  if (log2_m_ <= 60.0) return x * std::expm1(log_m_);  // m - 1 without cancellation
  const double r = std::exp(log_m_minus_1_ + std::log(std::fabs(x)));
  return x > 0.0 ? r : -r;
}

LogReal correct_prob_kernel(const TieMass& t, const EnsembleSize& m) {
  if (m.is_one()) return LogReal::one();  // no competitors
  const double lw = t.log_w();
  const double lz = t.log_z();
  const double lwz = t.log_wz();
  if (lw == kNegInf || lw <= lwz + kTieNegligibleLog) {
    return continuous_kernel(t.z(), m);
  }
  if (lz == kNegInf) {
    // Every competitor ties or wins outright: w^(m-1) / m.
    const double r = m.scale_by_m_minus_1(lw) - m.log_m();
    return LogReal::from_log(std::min(r, 0.0));
  }
  // log(z / (w + z)), formed directly from the ratio w/z so that nothing
  // cancels when w is many orders below z.
  double d;
  if (lz >= lw) {
    d = -std::log1p(std::exp(lw - lz));
  } else {
    d = lz - lwz;  // z is the smaller part; the quotient is safely below 1/2
  }
  const double md = m.scale_by_m(d);  // m log(z/(w+z)), strictly negative here
  const double r =
      m.scale_by_m(lwz) + detail::log1mexp(std::min(md, -0.0)) - lw - m.log_m();
  return LogReal::from_log(std::min(r, 0.0));
}

LogReal continuous_kernel(LogReal z, const EnsembleSize& m) {
  if (z.log() > 1e-9) throw DomainError("continuous_kernel: z must be a probability");
  if (m.is_one()) return LogReal::one();
  if (z.is_zero()) return LogReal::zero();
  const double r = m.scale_by_m_minus_1(std::min(z.log(), 0.0));
  return LogReal::from_log(std::min(r, 0.0));
}

LogReal direct_sum_kernel(const TieMass& t, std::int64_t m) {
  if (m < 1) throw DomainError("direct_sum_kernel: m must be >= 1");
  if (m > kDirectSumCap) throw SizeExceeded("direct_sum_kernel: m above 2^20");
  if (m == 1) return LogReal::one();
  const double lw = t.log_w();
  const double lz = t.log_z();
  const std::int64_t L = m - 1;
  if (lw == kNegInf) {
    // Only the no-tie term survives: z^L.
    if (lz == kNegInf) return LogReal::zero();
    return LogReal::from_log(double(L) * lz);
  }
  if (lz == kNegInf) {
    // Everyone ties: w^L / m.
    return LogReal::from_log(double(L) * lw - std::log(double(m)));
  }

  // Terms C(L, l) w^l z^(L-l) / (1 + l) are unimodal in l; locate the mode,
  // then sum outward in linear space relative to the peak until terms fall
  // below 1e-20 of it. Successive-term ratios are evaluated in log form so
  // extreme w/z never overflows.
  const double lr_wz = lw - lz;
  auto log_ratio = [&](std::int64_t l) {  // term(l+1) / term(l)
    return std::log(double(L - l)) - std::log(double(l) + 2.0) + lr_wz;
  };
  std::int64_t lo = 0, hi = L;  // first l with ratio < 1, or L if none
  if (log_ratio(0) < 0.0) {
    hi = 0;
  } else {
    while (lo + 1 < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (mid < L && log_ratio(mid) >= 0.0) lo = mid; else hi = mid;
    }
  }
  const std::int64_t mode = hi;

  // The peak log normalizes every term, so its absolute error lands on the
  // whole sum. An lgamma-difference binomial loses ~1e-10 at L near 2^20
  // (two 1e7-sized values cancelling to 1e5), and even a compensated walk of
  // per-ratio logs accumulates eps * log C(L, k). Instead form C(L, k) as an
  // exponent-tracked double-double product of its exact integer factors, so
  // the only log calls act on order-one mantissas.
  const std::int64_t kk = std::min(mode, L - mode);
  auto dd_mul_int = [](double& h, double& l, std::int64_t& ex, double b) {
    const double ph = h * b;
    const double pl = std::fma(h, b, -ph) + l * b;
    const double s = ph + pl;
    l = (ph - s) + pl;
    h = s;
    if (h > 0x1p500) { h *= 0x1p-512; l *= 0x1p-512; ex += 512; }
  };
  double nh = 1.0, nl = 0.0, dh = 1.0, dl = 0.0;
  std::int64_t nex = 0, dex = 0;
  for (std::int64_t l = 1; l <= kk; ++l) {
    dd_mul_int(nh, nl, nex, double(L - kk + l));
    dd_mul_int(dh, dl, dex, double(l));
  }
  // ln 2 to double-double, scaled by the net power of two pulled out above.
  constexpr double kLn2Hi = 6.93147180559945286e-01;
  constexpr double kLn2Lo = 2.319046813846299558e-17;
  NeumaierSum peak;
  const double exd = double(nex - dex);
  const double eh = exd * kLn2Hi;
  peak.add(eh);
  peak.add(std::fma(exd, kLn2Hi, -eh));
  peak.add(exd * kLn2Lo);
  peak.add(std::log(nh) + std::log1p(nl / nh));
  peak.add(-std::log(dh) - std::log1p(dl / dh));
  auto add_prod = [&peak](double a, double b) {  // a*b exactly, as hi + lo
    const double ph = a * b;
    peak.add(ph);
    peak.add(std::fma(a, b, -ph));
  };
  add_prod(double(mode), lw);
  add_prod(double(L - mode), lz);
  peak.add(-std::log(double(mode) + 1.0));
  const double log_peak = peak.value();

  const double cut = std::log(1e-20);
  double sum = 1.0, sumc = 0.0;  // peak term, normalized; Kahan carry
  auto add_term = [&](double v) {
    const double s = sum + v;
    sumc += (sum - s) + v;  // sum >= 1 >= v, so sum dominates
    sum = s;
  };
  NeumaierSum tlog;
  for (std::int64_t l = mode; l < L; ++l) {
    tlog.add(log_ratio(l));
    const double t = tlog.value();
    if (t < cut) break;
    add_term(std::exp(t));
  }
  tlog = NeumaierSum{};
  for (std::int64_t l = mode; l > 0; --l) {
    tlog.add(-log_ratio(l - 1));
    const double t = tlog.value();
    if (t < cut) break;
    add_term(std::exp(t));
  }
  return LogReal::from_log(std::min(log_peak + std::log(sum + sumc), 0.0));
}

}  // namespace rcbound
