#ifndef AZTEC_HIGHPREC_HPP
#define AZTEC_HIGHPREC_HPP

#include <mpfr.h>

#include <string>
#include <utility>

namespace aztec {

// Thin RAII view of an mpfr real. Only what the quadratures need.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  double log_abs() const {
    Real t(prec());
    mpfr_abs(t.v_, v_, MPFR_RNDN);
    mpfr_log(t.v_, t.v_, MPFR_RNDN);
    return t.to_double();
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) {
    mpfr_add(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }

  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

// E_{k,l} by the residue-reduced 1D integral evaluated in extended
// precision; needed where (C^2/a)^{max|index|} underflows the f64 noise
// floor (the large-separation asymptotic checks).
Real ekl_highprec(double a, long k, long l, mpfr_prec_t prec = 256);
double log_abs_ekl_highprec(double a, long k, long l, int* sign_out = nullptr,
                            mpfr_prec_t prec = 256);

// G_{eps,eps'}(t) = coeff * i^{h}; returns the real coefficient.
Real gas_correlation_highprec(double a, int eps1, int eps2, long t, mpfr_prec_t prec = 256);

}  // namespace aztec

#endif
