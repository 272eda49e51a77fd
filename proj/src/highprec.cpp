#include "aztec/highprec.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "aztec/gas.hpp"

namespace aztec {

namespace {

// one trapezoid pass over N nodes of the E integrand
Real ekl_pass(double a, long k, long absl, long N, mpfr_prec_t prec) {
  Real sum(prec), th(prec), alpha(prec), R(prec), s1(prec), term(prec), tmp(prec);
  Real one_a2(1.0 + a * a, prec), aa(a, prec);
  Real pi = Real::pi(prec);
  for (long j = 0; j < N; ++j) {
    // th = 2 pi j / N
    mpfr_mul_si(th.get(), pi.get(), 2 * j, MPFR_RNDN);
    mpfr_div_si(th.get(), th.get(), N, MPFR_RNDN);
    // alpha = 2 cos th
    mpfr_cos(alpha.get(), th.get(), MPFR_RNDN);
    mpfr_mul_si(alpha.get(), alpha.get(), 2, MPFR_RNDN);
    // R = sqrt((1+a^2)^2 - a^2 alpha^2)
    mpfr_mul(tmp.get(), aa.get(), alpha.get(), MPFR_RNDN);
    mpfr_sqr(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_sqr(R.get(), one_a2.get(), MPFR_RNDN);
    mpfr_sub(R.get(), R.get(), tmp.get(), MPFR_RNDN);
    mpfr_sqrt(R.get(), R.get(), MPFR_RNDN);
    // s1 = -a alpha / (1+a^2 + R)
    mpfr_add(tmp.get(), one_a2.get(), R.get(), MPFR_RNDN);
    mpfr_mul(s1.get(), aa.get(), alpha.get(), MPFR_RNDN);
    mpfr_neg(s1.get(), s1.get(), MPFR_RNDN);
    mpfr_div(s1.get(), s1.get(), tmp.get(), MPFR_RNDN);
    // term = cos(k th) s1^absl / (2R)
    mpfr_mul_si(tmp.get(), th.get(), k, MPFR_RNDN);
    mpfr_cos(term.get(), tmp.get(), MPFR_RNDN);
    if (absl > 0) {
      mpfr_pow_si(tmp.get(), s1.get(), absl, MPFR_RNDN);
      mpfr_mul(term.get(), term.get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_div(term.get(), term.get(), R.get(), MPFR_RNDN);
    mpfr_div_si(term.get(), term.get(), 2, MPFR_RNDN);
    sum += term;
  }
  mpfr_div_si(sum.get(), sum.get(), N, MPFR_RNDN);
  return sum;
}

}  // namespace

Real ekl_highprec(double a, long k, long l, mpfr_prec_t prec) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("ekl_highprec: requires 0 < a < 1");
  if (std::labs(k) > std::labs(l)) std::swap(k, l);
  long absl = std::labs(l);
  long N = 128;
  while (N < 4 * (std::labs(k) + 1)) N *= 2;
  Real prev = ekl_pass(a, k, absl, N, prec);
  for (N *= 2; N <= (1l << 17); N *= 2) {
    Real cur = ekl_pass(a, k, absl, N, prec);
    Real diff = cur - prev;
    // relative stop at ~1e-25
    if (mpfr_zero_p(diff.get()) ||
        (!mpfr_zero_p(cur.get()) &&
         mpfr_get_exp(diff.get()) + 83 < mpfr_get_exp(cur.get())))
      return cur;
    prev = std::move(cur);
  }
  throw std::runtime_error("ekl_highprec: quadrature did not converge");
}

double log_abs_ekl_highprec(double a, long k, long l, int* sign_out, mpfr_prec_t prec) {
  Real E = ekl_highprec(a, k, l, prec);
  if (sign_out) *sign_out = E.sign();
  return E.log_abs();
}

Real gas_correlation_highprec(double a, int eps1, int eps2, long t, mpfr_prec_t prec) {
  const int h = parity_h(eps1, eps2);
  Real E1 = ekl_highprec(a, t + 1 - eps2, t - 1 + eps1 + h, prec);
  Real E2 = ekl_highprec(a, t - eps2, t + eps1 - h, prec);
  Real w1(std::pow(a, eps1 + 1), prec), w2(std::pow(a, 2 - eps1), prec);
  return w1 * E1 + w2 * E2;
}

}  // namespace aztec
