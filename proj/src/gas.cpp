#include "aztec/gas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aztec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_gas_a(double a, const char* who) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error(std::string(who) + ": requires 0 < a < 1");
}

// pairwise summation over a grid evaluation
double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

double TorusSymbol::min_on_grid(int N) const {
  double mn = eval_angles(0, 0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) mn = std::min(mn, eval_angles(kTwoPi * i / N, kTwoPi * j / N));
  return mn;
}

GasRoots gas_roots(double a, cplx omega) {
  cplx b = 1.0 + 2.0 * (a + 1.0 / a) * omega + omega * omega;
  cplx disc = b * b - 4.0 * omega * omega;
  cplx sq = std::sqrt(disc);
  if (std::real(std::conj(b) * sq) < 0.0) sq = -sq;  // |b+sq| maximal
  cplx rbig = -(b + sq) / 2.0;
  cplx rsmall = (omega * omega) / rbig;
  GasRoots r;
  if (std::abs(rsmall) <= std::abs(rbig)) {
    r.r1 = rsmall;
    r.r2 = rbig;
  } else {
    r.r1 = rbig;
    r.r2 = rsmall;
  }
  r.near_degenerate = std::abs(r.r1 - r.r2) < 1e-8 * (std::abs(r.r1) + std::abs(r.r2));
  return r;
}

cplx f_quadrature(double a, int eps1, int eps2, cplx omega, int nodes) {
  require_gas_a(a, "f_quadrature");
  const int h = parity_h(eps1, eps2);
  TorusSymbol sym{a};
  cplx acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    double th = kTwoPi * j / nodes;
    cplx u = std::polar(1.0, th);
    cplx num = std::pow(a, eps1) * std::pow(u, -2 * (1 - eps1) * (1 - eps2)) *
                   std::pow(omega, 1 - eps1 - h) +
               std::pow(a, 1 - eps1) * std::pow(u, 2 * eps1 * eps2) * std::pow(omega, h - eps1);
    acc += num / sym.eval(u, omega / u);
  }
  return acc / double(nodes);
}

cplx f_eval(double a, int eps1, int eps2, cplx omega) {
  require_gas_a(a, "f_eval");
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw std::invalid_argument("f_eval: omega must lie on the unit circle");
  GasRoots r = gas_roots(a, omega);
  if (r.near_degenerate) return f_quadrature(a, eps1, eps2, omega);
  const int h = parity_h(eps1, eps2);
  const int e11 = (1 - eps1) * (1 - eps2);
  cplx num = std::pow(a, eps1 - 1) * std::pow(r.r1, e11) *
                 std::pow(omega, 2 - 2 * e11 - h - eps1) +
             std::pow(a, -eps1) * std::pow(omega, 1 + h - eps1) * std::pow(r.r1, eps1 * eps2);
  return num / (r.r1 - r.r2);
}

double gas_decay_radius(double a) {
  require_gas_a(a, "gas_decay_radius");
  // branch points of r1 = r2: w^2 + (2(a+1/a) -+ 2) w + 1 = 0
  double best = 1e300;
  for (double s : {-2.0, 2.0}) {
    double B = 2.0 * (a + 1.0 / a) + s;
    double rad = (std::abs(B) + std::sqrt(B * B - 4.0)) / 2.0;
    best = std::min(best, rad);
  }
  return best;
}

namespace {

// residue-reduced integrand of E_{k,l} at angle th, for |l| inner index
inline double ekl_integrand(double a, long k, long absl, double th) {
  double alpha = 2.0 * std::cos(th);
  double one = 1.0 + a * a;
  double R = std::sqrt(one * one - a * a * alpha * alpha);
  double s1 = -a * alpha / (one + R);
  return std::cos(double(k) * th) * std::pow(s1, double(absl)) / (2.0 * R);
}

}  // namespace

double ekl_1d(double a, int k, int l, double reltol) {
  require_gas_a(a, "ekl_1d");
  // symmetries E_{k,l} = E_{l,k} = E_{-k,-l}: put the larger index inside
  long kk = k, ll = l;
  if (std::abs(kk) > std::abs(ll)) std::swap(kk, ll);
  long absl = std::labs(ll);
  int N = 64;
  while (N < 4 * (std::abs(kk) + 1)) N *= 2;
  double prev = 0.0;
  for (;; N *= 2) {
    std::vector<double> terms(N);
    for (int j = 0; j < N; ++j) terms[j] = ekl_integrand(a, kk, absl, kTwoPi * j / N);
    double val = pairwise_sum(terms, 0, terms.size()) / N;
    if (N > 64 && std::abs(val - prev) <= reltol * std::abs(val) + 1e-300) return val;
    if (N >= 1 << 16) return val;
    prev = val;
  }
}

EklTable ekl_window(double a, int kmax, int lmax, double reltol) {
  require_gas_a(a, "ekl_window");
  TorusSymbol sym{a};
  EklTable tbl;
  tbl.kmax = kmax;
  tbl.lmax = lmax;
  const int K = 2 * kmax + 1, L = 2 * lmax + 1;
  tbl.values.assign(size_t(K) * L, 0.0);
  int N = 128;
  while (N < 4 * std::max(kmax, lmax)) N *= 2;
  std::vector<double> prev;
  for (;; N *= 2) {
    std::vector<double> g(size_t(N) * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        g[size_t(i) * N + j] = 1.0 / sym.eval_angles(kTwoPi * i / N, kTwoPi * j / N);
    // partial transform in the first angle, then contract the second
    std::vector<double> ck(size_t(K) * N);
    std::vector<double> terms(N);
    for (int k = -kmax; k <= kmax; ++k) {
      for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) terms[i] = std::cos(k * kTwoPi * i / N) * g[size_t(i) * N + j];
        ck[size_t(k + kmax) * N + j] = pairwise_sum(terms, 0, terms.size());
      }
    }
    for (int k = -kmax; k <= kmax; ++k)
      for (int l = -lmax; l <= lmax; ++l) {
        for (int j = 0; j < N; ++j)
          terms[j] = std::cos(l * kTwoPi * j / N) * ck[size_t(k + kmax) * N + j];
        tbl.values[size_t(k + kmax) * L + (l + lmax)] =
            pairwise_sum(terms, 0, terms.size()) / (double(N) * N);
      }
    if (!prev.empty()) {
      // entries at the window edge sit near the f64 roundoff floor of the
      // grid sum; their changes are judged against the window scale
      double mx = 0.0;
      for (double v : tbl.values) mx = std::max(mx, std::abs(v));
      double worst = 0.0;
      for (size_t i = 0; i < tbl.values.size(); ++i) {
        double d = std::abs(tbl.values[i] - prev[i]);
        if (d > reltol * std::abs(tbl.values[i]) && d > 1e-12 * mx) worst = std::max(worst, d / mx);
      }
      if (worst == 0.0) return tbl;
      if (N >= 4096) throw std::runtime_error("ekl_window: grid refinement stalled");
    }
    prev = tbl.values;
  }
}

double log_abs_ekl_asymptotic(double a, long A, long B) {
  require_gas_a(a, "ekl_asymptotic");
  long b = std::max(std::labs(A), std::labs(B));
  if (b <= 0) throw std::invalid_argument("ekl_asymptotic: b_m must be positive");
  double am = (b == std::labs(B)) ? double(A) : double(B);
  ModelParams p;
  p.a = a;
  double c = p.c(), C = p.curlyC();
  double lg = 2.0 * b * std::log(C) - (std::sqrt(1.0 - 2.0 * c) / (2.0 * c)) * am * am / b;
  lg -= std::log(2.0 * (1.0 + a * a) * std::pow(1.0 - 2.0 * c, 0.25) *
                 std::sqrt(kTwoPi * c * b));
  return lg;
}

double ekl_asymptotic(double a, long A, long B) {
  long b = std::max(std::labs(A), std::labs(B));
  double am = (b == std::labs(B)) ? double(A) : double(B);
  double sign = ((long(am) + b) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_abs_ekl_asymptotic(a, A, B));
}

cplx full_plane_Kinv(double a, Vec2i x, Vec2i y) {
  require_gas_a(a, "full_plane_Kinv");
  if (!AztecDiamond::white_parity(x) || !AztecDiamond::black_parity(y))
    throw std::invalid_argument("full_plane_Kinv: x must be white, y black");
  const int ex = AztecDiamond::eps(x), ey = AztecDiamond::eps(y);
  const int h = parity_h(ex, ey);
  if (((x.y - y.y - 1) % 2) != 0 || ((y.x - x.x - 1) % 2) != 0)
    throw std::invalid_argument("full_plane_Kinv: parity mismatch in vertex offsets");
  int k1 = (x.y - y.y - 1) / 2 + h;
  int k2 = (x.y - y.y + 1) / 2 - h;
  int l1 = (y.x - x.x - 1) / 2;
  int l2 = (y.x - x.x + 1) / 2;
  double E1 = ekl_1d(a, k1, l1), E2 = ekl_1d(a, k2, l2);
  return -ipow(1 + h) * (std::pow(a, ey) * E1 + std::pow(a, 1 - ey) * E2);
}

cplx full_plane_Kinv_quadrature(double a, Vec2i x, Vec2i y, int nodes) {
  require_gas_a(a, "full_plane_Kinv_quadrature");
  const int ex = AztecDiamond::eps(x), ey = AztecDiamond::eps(y);
  const int h = parity_h(ex, ey);
  TorusSymbol sym{a};
  const int p1 = (x.x - y.x + 1) / 2, p2 = (x.y - y.y + 1) / 2;
  cplx acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    double th1 = kTwoPi * i / nodes;
    cplx u1 = std::polar(1.0, th1);
    cplx row = 0.0;
    for (int j = 0; j < nodes; ++j) {
      double th2 = kTwoPi * j / nodes;
      cplx u2 = std::polar(1.0, th2);
      cplx num = std::pow(a, ey) * std::pow(u2, 1 - h) + std::pow(a, 1 - ey) * u1 * std::pow(u2, h);
      row += num / (sym.eval(u1, u2) * std::pow(u1, p1) * std::pow(u2, p2));
    }
    acc += row;
  }
  return -ipow(1 + h) * acc / (double(nodes) * nodes);
}

cplx gas_correlation(double a, int eps1, int eps2, long t) {
  require_gas_a(a, "gas_correlation");
  const int h = parity_h(eps1, eps2);
  double E1 = ekl_1d(a, int(t + 1 - eps2), int(t - 1 + eps1 + h));
  double E2 = ekl_1d(a, int(t - eps2), int(t + eps1 - h));
  return a * ipow(h) * (std::pow(a, eps1) * E1 + std::pow(a, 1 - eps1) * E2);
}

cplx gas_correlation_fourier(double a, int eps1, int eps2, long t, double reltol) {
  require_gas_a(a, "gas_correlation_fourier");
  const int h = parity_h(eps1, eps2);
  int N = 256;
  cplx prev = 0.0;
  for (;; N *= 2) {
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j) {
      double th = kTwoPi * j / N;
      acc += f_eval(a, eps1, eps2, std::polar(1.0, th)) * std::polar(1.0, -double(t) * th);
    }
    acc *= a * ipow(h) / double(N);
    if (N > 256 && std::abs(acc - prev) <= reltol * std::abs(acc) + 1e-300) return acc;
    if (N >= 1 << 15)
      throw std::runtime_error("gas_correlation_fourier: quadrature did not converge");
    prev = acc;
  }
}

GMatrix g_matrix(const ModelParams& p) {
  GMatrix G;
  const double s = std::sqrt(1.0 - 2.0 * p.c()) / 2.0;
  const double C = p.curlyC();
  for (int e1 = 0; e1 < 2; ++e1)
    for (int e2 = 0; e2 < 2; ++e2)
      G.m[e1][e2] = p.a * cplx(0, 1) * s * p.g(e1, e2) * std::pow(C, e1 + e2 - 2);
  return G;
}

std::pair<cplx, cplx> g_matrix_eigencheck(const ModelParams& p) {
  GMatrix G = g_matrix(p);
  cplx tr = G.m[0][0] + G.m[1][1];
  cplx det = G.m[0][0] * G.m[1][1] - G.m[0][1] * G.m[1][0];
  cplx sq = std::sqrt(tr * tr - 4.0 * det);
  return {(tr + sq) / 2.0, (tr - sq) / 2.0};
}

cplx parity_product_sum(const ModelParams& p, int s) {
  GMatrix G = g_matrix(p);
  cplx total = 0.0;
  for (int bits = 0; bits < (1 << s); ++bits) {
    cplx prod = 1.0;
    for (int i = 0; i < s; ++i) {
      int e1 = (bits >> i) & 1;
      int e2 = (bits >> ((i + 1) % s)) & 1;
      prod *= G.m[e1][e2];
    }
    total += prod;
  }
  return total;
}

}  // namespace aztec
