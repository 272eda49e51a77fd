#ifndef AZTEC_BOUNDARY_HPP
#define AZTEC_BOUNDARY_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aztec/kasteleyn.hpp"
#include "aztec/lattice.hpp"

namespace aztec {

// Scaling data tying the diamond of order n = 4m to the liquid-gas frame.
// Integer parts are floors throughout; (log m)^2 uses the natural log.
struct ScalingFrame {
  int m = 0;
  double a = 0.5;
  int M = 1;  // parallel copies per line
  double lambda1 = 0, lambda2 = 0, c0 = 0, xi = 0, curlyC = 0;
  int rho = 0;  // 4 [m(1+xi)]

  static ScalingFrame make(int m, double a, int M);

  int n() const { return 4 * m; }
  int tau(double beta) const {
    return int(std::floor(beta * beta * lambda1 * std::cbrt(2.0 * m)));
  }
  int beta_offset(double beta, int k) const {  // beta_m(q,k)
    double lg = std::log(double(m));
    return 2 * int(std::floor(beta * lambda2 * std::pow(2.0 * m, 2.0 / 3.0) +
                              k * lambda2 * lg * lg));
  }
  // M (log m)^2 / m^{1/3}; the copy construction wants this small
  double copy_spread_ratio() const {
    double lg = std::log(double(m));
    return M * lg * lg / std::cbrt(double(m));
  }
};

// One discrete line: copy k of line q, offset B = beta_m(q,k) from the
// main diagonal. Points are indexed by t (integer) and parity eps.
struct LineSpec {
  int q = 0;      // 1-based line index
  int k = 0;      // 1-based copy index
  double beta = 0;
  int B = 0;      // e2-offset
  int tau_q = 0;
  int rho = 0;
  int n = 0;
  int t_lo = 0, t_hi = 0;  // inclusive t-range with both vertices in the graph

  int u_of(int t, int eps) const { return rho + 2 * (t - tau_q) - eps; }
  bool contains(int t, int eps) const {
    int u = u_of(t, eps);
    return u >= std::abs(B) && u <= 2 * n - 1 - std::abs(B);
  }
  // white and black vertex of the edge sitting at (t,eps)
  Vec2i x_of(int t, int eps) const {
    int u = u_of(t, eps);
    return eps == 0 ? Vec2i{u + 1 + B, u - B} : Vec2i{u + B, u + 1 - B};
  }
  Vec2i y_of(int t, int eps) const {
    int u = u_of(t, eps);
    return eps == 0 ? Vec2i{u + B, u + 1 - B} : Vec2i{u + 1 + B, u - B};
  }
  // exponents of the kernel conjugation
  double gamma1(int t, double lambda1, int m) const {
    return t / (lambda1 * std::cbrt(2.0 * m)) * beta - beta * beta * beta / 3.0;
  }
  long gamma2(int eps) const { return eps + B; }
  long gamma3(int t) const { return 2 * long(t - tau_q) + B; }
};

std::vector<LineSpec> build_lines(const ScalingFrame& f, const std::vector<double>& betas);

// Discrete embedding of the interval A_p = [al, ar] on copy (q,k):
// t in [floor(al l1 (2m)^{1/3}), floor(ar l1 (2m)^{1/3})], end faces at the
// flanking odd e1-multiples.
struct IntervalEmbed {
  int p = 0;
  int t_lo = 0, t_hi = 0;
  Vec2i face_minus, face_plus;  // a-faces bracketing the interval
};

IntervalEmbed embed_interval(const ScalingFrame& f, const LineSpec& line, int p, double al,
                             double ar);

// mu_m({beta_q} x A_p) for one sampled configuration, evaluated both through
// the height difference of the end faces and through the signed particle
// count; the two routes must agree exactly.
struct MeasureSample {
  std::vector<std::vector<double>> mu;   // [p][q]
  std::vector<std::vector<long>> quanta; // 4 M mu, integer
};

MeasureSample measure_from_config(const AztecDiamond& g, const DimerConfig& config,
                                  const ScalingFrame& frame, const std::vector<LineSpec>& lines,
                                  const std::vector<std::pair<double, double>>& intervals);

// det(I + (e^{psi/M} - 1) Ktilde_m) over the support of psi, with
// Ktilde_m(z,z') = a i K^{-1}(x(z'), y(z)). Weights w[p][q].
cplx finite_fredholm(const AztecDiamond& g, const ScalingFrame& frame,
                     const std::vector<LineSpec>& lines,
                     const std::vector<std::pair<double, double>>& intervals,
                     const std::vector<std::vector<cplx>>& w);

// Same determinant through the conjugated kernel K_m of the gauge identity;
// agreement tests the g-table bookkeeping and the gas/Airy split.
cplx finite_fredholm_conjugated(const AztecDiamond& g, const ScalingFrame& frame,
                                const std::vector<LineSpec>& lines,
                                const std::vector<std::pair<double, double>>& intervals,
                                const std::vector<std::vector<cplx>>& w);

// Monte Carlo Laplace functional E[exp(sum w mu)] with jackknife errors.
struct McLaplace {
  double mean = 0, stderr_mean = 0;
  double log_mean = 0, stderr_log = 0;
  long samples = 0;
};

McLaplace mc_laplace(const ScalingFrame& frame, const std::vector<double>& betas,
                     const std::vector<std::pair<double, double>>& intervals,
                     const std::vector<std::vector<double>>& w, long samples, uint64_t seed,
                     int threads = 1,
                     const std::function<void(long)>& progress = nullptr);

// ---- conjugated kernels and their scaling-limit comparisons ----

// K_{m,0}(z,z') built from the full-plane gas kernel with the asymptotic
// prefactors; entries are real up to roundoff.
double conjugated_gas_kernel(const ScalingFrame& f, const LineSpec& lz, int t, int eps,
                             const LineSpec& lzp, int tp, int epsp);

// K_{m,1}(z,z') from the exact finite inverse: Airy part K_A = full-plane
// minus finite. Needs n <= 32.
double conjugated_airy_kernel(const AztecDiamond& g, const KernelMatrix& Kinv,
                              const ScalingFrame& f, const LineSpec& lz, int t, int eps,
                              const LineSpec& lzp, int tp, int epsp);

}  // namespace aztec

#endif
