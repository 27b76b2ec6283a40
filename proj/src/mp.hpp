#pragma once

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <complex>

namespace hecke::mp {

// Minimal RAII handle over mpfr_t; copying is deliberately disabled so the
// hot loops in the series code never allocate behind our back.
class Real {
 public:
  explicit Real(mpfr_prec_t bits, double v = 0.0) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const { return mpfr_zero_p(v_) ? LONG_MIN / 2 : mpfr_get_exp(v_); }

 private:
  mpfr_t v_;
};

// Complex number as a pair of Reals, with the few operations the 1F2
// recurrence needs. Temporaries are owned by the caller.
struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t bits, std::complex<double> v = 0.0)
      : re(bits, v.real()), im(bits, v.imag()) {}
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  long exponent() const { return std::max(re.exponent(), im.exponent()); }
};

// out = a * b; out may alias neither a nor b. t1, t2 are scratch.
inline void mul(Complex& out, const Complex& a, const Complex& b, Real& t1, Real& t2) {
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
}

// a /= b. t1..t3 are scratch.
inline void div_inplace(Complex& a, const Complex& b, Real& t1, Real& t2, Real& t3) {
  mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(t3.get(), t1.get(), t2.get(), MPFR_RNDN);  // |b|^2
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_fma(t1.get(), a.im.get(), b.im.get(), t1.get(), MPFR_RNDN);  // re(a conj b)
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(a.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(a.im.get(), t2.get(), a.im.get(), MPFR_RNDN);  // im(a conj b)
  mpfr_div(a.re.get(), t1.get(), t3.get(), MPFR_RNDN);
  mpfr_div(a.im.get(), a.im.get(), t3.get(), MPFR_RNDN);
}

}  // namespace hecke::mp
