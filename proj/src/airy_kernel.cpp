#include "aztec/airy_kernel.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aztec/airy.hpp"
#include "aztec/quadrature.hpp"

namespace aztec {

double kernel_Atilde(double tau1, double zeta1, double tau2, double zeta2) {
  const double dt = tau1 - tau2;
  const GaussLegendre& gl = gauss_legendre(32);
  std::vector<double> x, w;
  double acc = 0.0;
  double lam = 0.0;
  const double panel = 4.0;
  for (int pnl = 0; pnl < 64; ++pnl) {
    gl_map(gl, lam, lam + panel, x, w);
    double part = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
      part += w[i] * std::exp(-x[i] * dt) * airy_ai_unchecked(zeta1 + x[i]) *
              airy_ai_unchecked(zeta2 + x[i]);
    acc += part;
    lam += panel;
    // superexponential tail: two consecutive negligible panels end it
    if (std::abs(part) < 1e-18 * (std::abs(acc) + 1e-30) && lam > 8.0 + std::abs(dt) * 4.0) break;
  }
  return acc;
}

double kernel_phi(double tau1, double tau2, double zeta1, double zeta2) {
  if (!(tau1 < tau2)) return 0.0;
  const double d = tau2 - tau1;
  return 1.0 / std::sqrt(4.0 * std::numbers::pi * d) *
         std::exp(-(zeta1 - zeta2) * (zeta1 - zeta2) / (4.0 * d) -
                  0.5 * d * (zeta1 + zeta2) + d * d * d / 12.0);
}

double kernel_extended_airy(double tau1, double zeta1, double tau2, double zeta2) {
  return kernel_Atilde(tau1, zeta1, tau2, zeta2) - kernel_phi(tau1, tau2, zeta1, zeta2);
}

double airy_kernel_cd(double zeta1, double zeta2) {
  if (std::abs(zeta1 - zeta2) < 1e-7) {
    double mid = 0.5 * (zeta1 + zeta2);
    AiryEval e = {mid, airy_ai_unchecked(mid), airy_ai_prime_unchecked(mid)};
    return e.Aip * e.Aip - mid * e.Ai * e.Ai;
  }
  double a1 = airy_ai_unchecked(zeta1), a2 = airy_ai_unchecked(zeta2);
  double d1 = airy_ai_prime_unchecked(zeta1), d2 = airy_ai_prime_unchecked(zeta2);
  return (a1 * d2 - d1 * a2) / (zeta1 - zeta2);
}

namespace {

struct NystromNodes {
  std::vector<double> x, sqw;   // positions and sqrt-weights
  std::vector<int> line;        // line index q
  std::vector<cplx> diag;       // e^{w} - 1 factor per node
};

NystromNodes build_nodes(const LineGrid& grid, const TestFunction& psi, int order) {
  NystromNodes nd;
  const GaussLegendre& gl = gauss_legendre(order);
  std::vector<double> x, w;
  for (size_t q = 0; q < grid.beta.size(); ++q)
    for (size_t p = 0; p < psi.intervals.size(); ++p) {
      cplx d = std::exp(psi.weights[p][q]) - 1.0;
      if (d == cplx(0.0, 0.0)) continue;
      gl_map(gl, psi.intervals[p].first, psi.intervals[p].second, x, w);
      for (size_t i = 0; i < x.size(); ++i) {
        nd.x.push_back(x[i]);
        nd.sqw.push_back(std::sqrt(w[i]));
        nd.line.push_back(int(q));
        nd.diag.push_back(d);
      }
    }
  return nd;
}

cplx nystrom_det(const LineGrid& grid, const TestFunction& psi, int order) {
  NystromNodes nd = build_nodes(grid, psi, order);
  const int N = int(nd.x.size());
  if (N == 0) return 1.0;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double bq1 = grid.beta[nd.line[i]], bq2 = grid.beta[nd.line[j]];
      double ker = (nd.line[i] == nd.line[j]) ? airy_kernel_cd(nd.x[i], nd.x[j])
                                              : kernel_extended_airy(bq1, nd.x[i], bq2, nd.x[j]);
      M(i, j) += nd.diag[i] * nd.sqw[i] * nd.sqw[j] * ker;
    }
  return M.partialPivLu().determinant();
}

}  // namespace

cplx laplace_functional_airy(const LineGrid& grid, const TestFunction& psi, double tol,
                             int max_order) {
  for (size_t q = 1; q < grid.beta.size(); ++q)
    if (!(grid.beta[q] > grid.beta[q - 1]))
      throw std::invalid_argument("laplace_functional_airy: lines must be strictly increasing");
  for (size_t p = 0; p < psi.intervals.size(); ++p) {
    if (!(psi.intervals[p].first < psi.intervals[p].second))
      throw std::invalid_argument("laplace_functional_airy: empty interval");
    for (size_t r = 0; r < p; ++r) {
      if (!(psi.intervals[p].first >= psi.intervals[r].second ||
            psi.intervals[p].second <= psi.intervals[r].first))
        throw std::invalid_argument("laplace_functional_airy: intervals overlap");
    }
    if (psi.weights[p].size() != grid.beta.size())
      throw std::invalid_argument("laplace_functional_airy: weight table shape mismatch");
  }

  int order = grid.gl_order / 2;
  cplx prev = nystrom_det(grid, psi, order);
  for (order *= 2; order <= max_order; order *= 2) {
    cplx cur = nystrom_det(grid, psi, order);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  throw std::runtime_error("laplace_functional_airy: node doubling did not stabilize");
}

double gap_probability(double s, int gl_order, double zeta_max) {
  if (!(s < zeta_max)) return 1.0;
  // panels of width <= 4 keep the oscillatory left part resolved
  std::vector<std::pair<double, double>> panels;
  double lo = s;
  while (lo < zeta_max) {
    double hi = std::min(lo + 4.0, zeta_max);
    panels.emplace_back(lo, hi);
    lo = hi;
  }
  const GaussLegendre& gl = gauss_legendre(gl_order);
  std::vector<double> x, w, xs, sqw;
  for (auto [pa, pb] : panels) {
    gl_map(gl, pa, pb, x, w);
    for (size_t i = 0; i < x.size(); ++i) {
      xs.push_back(x[i]);
      sqw.push_back(std::sqrt(w[i]));
    }
  }
  const int N = int(xs.size());
  std::vector<double> ai(N), aip(N);
  for (int i = 0; i < N; ++i) {
    ai[i] = airy_ai_unchecked(xs[i]);
    aip[i] = airy_ai_prime_unchecked(xs[i]);
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double ker = (i == j) ? aip[i] * aip[i] - xs[i] * ai[i] * ai[i]
                            : (ai[i] * aip[j] - aip[i] * ai[j]) / (xs[i] - xs[j]);
      M(i, j) -= sqw[i] * sqw[j] * ker;
    }
  return M.partialPivLu().determinant();
}

TwMoments tw_moments(int gl_order, double zeta_max, int s_panel_nodes) {
  // E X   = -int_{-inf}^0 F + int_0^inf (1-F)
  // E X^2 = 2 int_0^inf s(1-F) ds - 2 int_{-inf}^0 s F ds
  const double s_lo = -9.0, s_hi = 6.0;
  const GaussLegendre& gl = gauss_legendre(s_panel_nodes);
  std::vector<double> x, w;
  double m1 = 0.0, m2 = 0.0;
  double panel = 0.75;
  for (double lo = s_lo; lo < s_hi - 1e-12; lo += panel) {
    gl_map(gl, lo, std::min(lo + panel, s_hi), x, w);
    for (size_t i = 0; i < x.size(); ++i) {
      double F = gap_probability(x[i], gl_order, zeta_max);
      double g = (x[i] >= 0.0) ? (1.0 - F) : -F;
      m1 += w[i] * g;
      m2 += w[i] * 2.0 * std::abs(x[i]) * ((x[i] >= 0.0) ? (1.0 - F) : F);
    }
  }
  TwMoments tm;
  tm.mean = m1;
  tm.variance = m2 - m1 * m1;
  return tm;
}

namespace {

// oracle route: kernel through the defining lambda-integral on a trapezoid
// ladder, Nystrom on Clenshaw-Curtis nodes, Simpson in s
double gap_probability_oracle(double s) {
  const double zeta_max = 11.0;
  const int N = 120;  // CC nodes 0..N
  std::vector<double> xs(N + 1), cw(N + 1);
  for (int j = 0; j <= N; ++j) {
    double c = std::cos(j * std::numbers::pi / N);
    xs[j] = 0.5 * (s + zeta_max) + 0.5 * (zeta_max - s) * c;
    double w = 1.0;
    for (int k = 1; k <= N / 2; ++k) {
      double b = (2 * k == N) ? 1.0 : 2.0;
      w -= b * std::cos(2.0 * k * j * std::numbers::pi / N) / (4.0 * k * k - 1.0);
    }
    w *= 2.0 / N;
    if (j == 0 || j == N) w *= 0.5;
    cw[j] = w * 0.5 * (zeta_max - s);
  }
  // K(x,y) = int_0^L Ai(x+l)Ai(y+l) dl on a Simpson ladder
  const int L = 260;  // even
  const double lmax = 26.0, dl = lmax / L;
  std::vector<std::vector<double>> ai(L + 1, std::vector<double>(N + 1));
  for (int t = 0; t <= L; ++t)
    for (int i = 0; i <= N; ++i) ai[t][i] = airy_ai_unchecked(xs[i] + t * dl);
  std::vector<double> simp(L + 1, 2.0);
  simp[0] = simp[L] = 1.0;
  for (int t = 1; t < L; t += 2) simp[t] = 4.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(N + 1, N + 1);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      double acc = 0.0;
      for (int t = 0; t <= L; ++t) acc += simp[t] * ai[t][i] * ai[t][j];
      M(i, j) -= std::sqrt(cw[i] * cw[j]) * acc * dl / 3.0;
    }
  return M.partialPivLu().determinant();
}

}  // namespace

TwMoments tw_moments_coarse_oracle() {
  // the first-moment integrand jumps at s = 0, so Simpson runs on the two
  // half lines separately
  auto simpson = [](double lo, double hi, int Ns, auto f) {
    double h = (hi - lo) / Ns, acc = 0.0;
    for (int i = 0; i <= Ns; ++i) {
      double cwt = (i == 0 || i == Ns) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += cwt * f(lo + i * h);
    }
    return acc * h / 3.0;
  };
  double m1 = 0.0, m2 = 0.0;
  m1 -= simpson(-8.75, 0.0, 100, [](double s) { return gap_probability_oracle(s); });
  m1 += simpson(0.0, 5.25, 60, [](double s) { return 1.0 - gap_probability_oracle(s); });
  m2 += simpson(-8.75, 0.0, 100,
                [](double s) { return -2.0 * s * gap_probability_oracle(s); });
  m2 += simpson(0.0, 5.25, 60,
                [](double s) { return 2.0 * s * (1.0 - gap_probability_oracle(s)); });
  return {m1, m2 - m1 * m1};
}

}  // namespace aztec
