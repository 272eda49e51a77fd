#include "aztec/airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aztec {

namespace {

constexpr double kAi0 = 0.3550280538878172;     // 3^{-2/3}/Gamma(2/3)
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kAip0 = -0.2588194037928068;   // -3^{-1/3}/Gamma(1/3)
constexpr double kAip0Lo = 2.522243111610832e-17;

// ---- double-double helpers (sum/product with error terms) ----

struct dd {
  double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  dd r = two_sum(s.hi, lo);
  return r;
}

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
  double q1 = a.hi / b;
  dd p = two_prod(q1, b);
  double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
  return two_sum(q1, r);
}

// Maclaurin sums of the two independent solutions and their derivatives.
// f  = 1 + z^3/6 + ...        term ratio z^3/((3k+2)(3k+3))
// g  = z + z^4/12 + ...       ratio z^3/((3k+3)(3k+4))
// f' = z^2/2 + z^5/30 + ...   ratio z^3/((3k+3)(3k+5))
// g' = 1 + z^3/3 + ...        ratio z^3/((3k+1)(3k+3))
AiryEval airy_series_plain(double z) {
  double f = 1.0, g = z, fp = 0.5 * z * z, gp = 1.0;
  double tf = f, tg = g, tfp = fp, tgp = gp;
  const double z3 = z * z * z;
  for (int k = 0; k < 400; ++k) {
    tf *= z3 / (double(3 * k + 2) * double(3 * k + 3));
    tg *= z3 / (double(3 * k + 3) * double(3 * k + 4));
    tfp *= z3 / (double(3 * k + 3) * double(3 * k + 5));
    tgp *= z3 / (double(3 * k + 1) * double(3 * k + 3));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    double worst = std::max(std::max(std::abs(tf), std::abs(tg)),
                            std::max(std::abs(tfp), std::abs(tgp)));
    if (worst < 1e-20 && std::abs(z3) < double(3 * k + 1) * double(3 * k + 2)) break;
  }
  return {z, kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

AiryEval airy_series_dd(double z) {
  dd f{1.0, 0.0}, g{z, 0.0}, fp = dd_mul({0.5 * z, 0.0}, {z, 0.0}), gp{1.0, 0.0};
  dd tf = f, tg = g, tfp = fp, tgp = gp;
  const dd z3 = dd_mul(dd_mul({z, 0.0}, {z, 0.0}), {z, 0.0});
  for (int k = 0; k < 600; ++k) {
    tf = dd_div_d(dd_mul(tf, z3), double(3 * k + 2) * double(3 * k + 3));
    tg = dd_div_d(dd_mul(tg, z3), double(3 * k + 3) * double(3 * k + 4));
    tfp = dd_div_d(dd_mul(tfp, z3), double(3 * k + 3) * double(3 * k + 5));
    tgp = dd_div_d(dd_mul(tgp, z3), double(3 * k + 1) * double(3 * k + 3));
    f = dd_add(f, tf);
    g = dd_add(g, tg);
    fp = dd_add(fp, tfp);
    gp = dd_add(gp, tgp);
    double worst = std::max(std::max(std::abs(tf.hi), std::abs(tg.hi)),
                            std::max(std::abs(tfp.hi), std::abs(tgp.hi)));
    if (worst < 1e-40 && std::abs(z3.hi) < double(3 * k + 1) * double(3 * k + 2)) break;
  }
  dd ai = dd_add(dd_mul({kAi0, kAi0Lo}, f), dd_mul({kAip0, kAip0Lo}, g));
  dd aip = dd_add(dd_mul({kAi0, kAi0Lo}, fp), dd_mul({kAip0, kAip0Lo}, gp));
  return {z, ai.hi + ai.lo, aip.hi + aip.lo};
}

// u_k, v_k of the asymptotic expansions
void asym_uv(double xi, double& Su, double& Sv, bool alternate) {
  double u = 1.0, v = 1.0;
  Su = 1.0;
  Sv = 1.0;
  double prev = 1.0;
  for (int k = 0; k < 60; ++k) {
    double ratio = double(6 * k + 1) * double(6 * k + 3) * double(6 * k + 5) /
                   (216.0 * double(k + 1) * double(2 * k + 1));
    u *= ratio;
    v = u * double(6 * (k + 1) + 1) / double(1 - 6 * (k + 1));
    double tu = u / std::pow(xi, k + 1);
    if (std::abs(tu) > prev) break;  // past the optimal truncation
    prev = std::abs(tu);
    double s = alternate ? ((k % 2 == 0) ? -1.0 : 1.0) : 1.0;
    Su += s * tu;
    Sv += s * v / std::pow(xi, k + 1);
  }
}

AiryEval airy_asym_pos(double z) {
  double xi = 2.0 / 3.0 * std::pow(z, 1.5);
  double Su, Sv;
  asym_uv(xi, Su, Sv, true);
  double pre = std::exp(-xi) / (2.0 * std::sqrt(std::numbers::pi));
  return {z, pre * Su / std::pow(z, 0.25), -pre * Sv * std::pow(z, 0.25)};
}

AiryEval airy_asym_neg(double z) {
  double x = -z;
  double xi = 2.0 / 3.0 * std::pow(x, 1.5);
  double cphi = std::cos(xi - std::numbers::pi / 4.0), sphi = std::sin(xi - std::numbers::pi / 4.0);
  // even/odd splits of the u and v series
  double ue = 1.0, uo = 0.0, ve = 1.0, vo = 0.0;
  double u = 1.0;
  double prev = 1e300;
  for (int k = 1; k < 60; ++k) {
    double ratio = double(6 * (k - 1) + 1) * double(6 * (k - 1) + 3) * double(6 * (k - 1) + 5) /
                   (216.0 * double(k) * double(2 * k - 1));
    u *= ratio;
    double v = u * double(6 * k + 1) / double(1 - 6 * k);
    double t = u / std::pow(xi, k);
    if (std::abs(t) > prev) break;
    prev = std::abs(t);
    double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{floor(k/2)}
    if (k % 2 == 0) {
      ue += sgn * t;
      ve += sgn * v / std::pow(xi, k);
    } else {
      uo += sgn * t;
      vo += sgn * v / std::pow(xi, k);
    }
  }
  double pre = 1.0 / (std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
  double ai = pre * (cphi * ue + sphi * uo);
  double aip = std::pow(x, 0.25) / std::sqrt(std::numbers::pi) * (sphi * ve - cphi * vo);
  return {z, ai, aip};
}

AiryEval airy_any(double z) {
  double az = std::abs(z);
  if (az <= 5.0) return airy_series_plain(z);
  if (az <= 10.5) return airy_series_dd(z);
  return z > 0 ? airy_asym_pos(z) : airy_asym_neg(z);
}

}  // namespace

AiryEval airy(double zeta) {
  if (std::abs(zeta) > 30.0) throw std::domain_error("airy: supported range is |zeta| <= 30");
  return airy_any(zeta);
}

double airy_ai_unchecked(double zeta) {
  if (zeta > 120.0) return 0.0;  // below 1e-300 already
  return airy_any(zeta).Ai;
}

double airy_ai_prime_unchecked(double zeta) {
  if (zeta > 120.0) return 0.0;
  return airy_any(zeta).Aip;
}

}  // namespace aztec
