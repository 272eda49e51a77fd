#ifndef AZTEC_GAS_HPP
#define AZTEC_GAS_HPP

#include <complex>
#include <utility>
#include <vector>

#include "aztec/lattice.hpp"

namespace aztec {

inline int parity_h(int eps1, int eps2) { return eps1 * (1 - eps2) + eps2 * (1 - eps1); }

// i^k for integer k
inline cplx ipow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Spectral curve symbol c~(u1,u2) = 2(1+a^2) + a(u1+1/u1)(u2+1/u2);
// strictly positive on the unit torus for a != 1 (gas phase).
struct TorusSymbol {
  double a = 0.5;
  cplx eval(cplx u1, cplx u2) const {
    return 2.0 * (1.0 + a * a) + a * (u1 + 1.0 / u1) * (u2 + 1.0 / u2);
  }
  double eval_angles(double th1, double th2) const {
    return 2.0 * (1.0 + a * a) + 4.0 * a * std::cos(th1) * std::cos(th2);
  }
  double min_on_grid(int N) const;
};

// Roots of u^2 + (1 + 2(a+1/a)w + w^2) u + w^2, split by modulus:
// |r1| < 1 < |r2| away from the branch points, r1 r2 = w^2.
struct GasRoots {
  cplx r1, r2;
  bool near_degenerate = false;  // |r1|,|r2| within 1e-8: fall back to quadrature
};
GasRoots gas_roots(double a, cplx omega);

// f_{eps,eps'}(w) in residue closed form; falls back to the contour
// quadrature near degenerate discriminants.
cplx f_eval(double a, int eps1, int eps2, cplx omega);

// Direct contour quadrature of the defining u-integral (test oracle).
cplx f_quadrature(double a, int eps1, int eps2, cplx omega, int nodes = 4096);

// Nearest singularity radius of f beyond the unit circle; |G(t)| decays
// like radius^{-t}.
double gas_decay_radius(double a);

// E_{k,l}: Fourier coefficients of 1/c~ on the torus.
struct EklTable {
  int kmax = 0, lmax = 0;  // window [-kmax,kmax] x [-lmax,lmax]
  std::vector<double> values;
  double at(int k, int l) const {
    return values[size_t(k + kmax) * (2 * lmax + 1) + (l + lmax)];
  }
};

// Window via the 2D uniform-grid transform of 1/c~ (grid doubled until the
// window is stable to reltol).
EklTable ekl_window(double a, int kmax, int lmax, double reltol = 1e-10);

// Single coefficient via the residue-reduced 1D integral; accurate as long
// as the cancellation (C^2/a)^max(|k|,|l|) stays above the f64 noise floor.
double ekl_1d(double a, int k, int l, double reltol = 1e-12);

// Leading asymptotics of E_{B+A,B-A} for b = max(|A|,|B|) large.
double ekl_asymptotic(double a, long A, long B);
double log_abs_ekl_asymptotic(double a, long A, long B);

// Full-plane gas inverse Kasteleyn entry; x white, y black.
cplx full_plane_Kinv(double a, Vec2i x, Vec2i y);
// Direct double-contour quadrature of the same entry (test oracle).
cplx full_plane_Kinv_quadrature(double a, Vec2i x, Vec2i y, int nodes = 512);

// Gas correlation G_{eps,eps'}(t) = a i^{h} fhat_{eps,eps'}(t); assembled
// from E coefficients.
cplx gas_correlation(double a, int eps1, int eps2, long t);
// Fourier-coefficient route through f on a doubled circle grid (oracle).
cplx gas_correlation_fourier(double a, int eps1, int eps2, long t, double reltol = 1e-10);

// 2x2 matrix with entries a i (sqrt(1-2c)/2) g_{e1,e2} C^{e1+e2-2}; its
// eigenvalues are {0,-1} and traces of its powers drive the parity sums.
struct GMatrix {
  cplx m[2][2];
};
GMatrix g_matrix(const ModelParams& p);
std::pair<cplx, cplx> g_matrix_eigencheck(const ModelParams& p);

// Brute-force sum over parity strings of the cyclic g-products (length s).
cplx parity_product_sum(const ModelParams& p, int s);

}  // namespace aztec

#endif
