#pragma once

// Minimal RAII wrapper over MPFR used only by the test oracles. Arithmetic
// carries whatever precision the value was created with; binary ops take the
// max precision of their operands. Not a general-purpose number type: just
// enough surface for the reference evaluations in this test suite.

#include <gmp.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace testsupport {

class MpFloat {
 public:
  explicit MpFloat(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpFloat(double d, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
  MpFloat(long i, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, i, MPFR_RNDN); }

  MpFloat(const MpFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpFloat(MpFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  MpFloat& operator=(MpFloat o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~MpFloat() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  friend MpFloat operator+(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator-(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator*(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator/(const MpFloat& a, const MpFloat& b) {
    MpFloat r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator-(const MpFloat& a) {
    MpFloat r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const MpFloat& a, const MpFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const MpFloat& a, const MpFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

 private:
  mpfr_t v_;
};

inline MpFloat mp_log(const MpFloat& a) { MpFloat r(a.prec()); mpfr_log(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline MpFloat mp_log1p(const MpFloat& a) { MpFloat r(a.prec()); mpfr_log1p(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline MpFloat mp_exp(const MpFloat& a) { MpFloat r(a.prec()); mpfr_exp(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline MpFloat mp_expm1(const MpFloat& a) { MpFloat r(a.prec()); mpfr_expm1(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline MpFloat mp_sqrt(const MpFloat& a) { MpFloat r(a.prec()); mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline MpFloat mp_lgamma(const MpFloat& a) {
  MpFloat r(a.prec());
  int sgn = 0;
  mpfr_lgamma(r.raw(), &sgn, a.raw(), MPFR_RNDN);
  return r;
}
inline MpFloat mp_pow_si(const MpFloat& a, long e) {
  MpFloat r(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}
// a^e where e may be astronomically large; routed through exp(e * log a).
inline MpFloat mp_pow(const MpFloat& a, const MpFloat& e) {
  MpFloat r(std::max(a.prec(), e.prec()));
  mpfr_pow(r.raw(), a.raw(), e.raw(), MPFR_RNDN);
  return r;
}
// 2^k for integer k (exact).
inline MpFloat mp_exp2_si(long k, mpfr_prec_t prec) {
  MpFloat r(prec);
  mpfr_set_si_2exp(r.raw(), 1, k, MPFR_RNDN);
  return r;
}
// Exact binomial coefficient C(n, k) through GMP integers.
inline MpFloat mp_binomial(unsigned long n, unsigned long k, mpfr_prec_t prec) {
  mpz_t z;
  mpz_init(z);
  mpz_bin_uiui(z, n, k);
  MpFloat r(prec);
  mpfr_set_z(r.raw(), z, MPFR_RNDN);
  mpz_clear(z);
  return r;
}
inline std::string mp_str(const MpFloat& a) {
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.30Rg", a.raw()) < 0) return "<fmt-error>";
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace testsupport
