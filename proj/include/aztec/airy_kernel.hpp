#ifndef AZTEC_AIRY_KERNEL_HPP
#define AZTEC_AIRY_KERNEL_HPP

#include <complex>
#include <vector>

#include "aztec/lattice.hpp"

namespace aztec {

// A~(tau1,z1;tau2,z2) = int_0^inf e^{-l(tau1-tau2)} Ai(z1+l) Ai(z2+l) dl
double kernel_Atilde(double tau1, double zeta1, double tau2, double zeta2);

// Gaussian part; zero unless tau1 < tau2.
double kernel_phi(double tau1, double tau2, double zeta1, double zeta2);

// extended Airy kernel A = A~ - phi
double kernel_extended_airy(double tau1, double zeta1, double tau2, double zeta2);

// Christoffel-Darboux form of the equal-time kernel; equals
// kernel_Atilde(t,z1;t,z2) and is much cheaper.
double airy_kernel_cd(double zeta1, double zeta2);

struct TestFunction {
  std::vector<std::pair<double, double>> intervals;  // disjoint [l,r]
  std::vector<std::vector<cplx>> weights;            // weights[p][q]
};

struct LineGrid {
  std::vector<double> beta;  // strictly increasing line times
  int gl_order = 64;         // Gauss-Legendre order per interval
};

// det(I + (e^Psi - 1) A) on L^2({beta_q} x R). The perturbation is
// supported on the intervals, so the Nystrom nodes live there; the order
// is doubled until the determinant moves less than tol.
cplx laplace_functional_airy(const LineGrid& grid, const TestFunction& psi, double tol = 1e-7,
                             int max_order = 512);

// One-point gap probability F(s) = det(I - K_Ai) on [s, zeta_max]; the
// w -> -inf limit of the single-line functional. zeta_max defaults so that
// Ai(zeta_max)^2 is below 1e-16.
double gap_probability(double s, int gl_order = 48, double zeta_max = 10.0);

struct TwMoments {
  double mean = 0.0, variance = 0.0;
};
// moments of the distribution F via tail integrals of the gap probability
TwMoments tw_moments(int gl_order = 48, double zeta_max = 10.0, int s_panel_nodes = 16);

// The coarse oracle: an independently coded route (integral-form kernel,
// different quadrature family and s-grid) used to cross-check the above.
TwMoments tw_moments_coarse_oracle();

}  // namespace aztec

#endif
