#ifndef AZTEC_KASTELEYN_HPP
#define AZTEC_KASTELEYN_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "aztec/lattice.hpp"

namespace aztec {

// Dense kernel with explicit vertex indexing. Rows/cols follow the fixed
// lexicographic (x2,x1) black/white indexing of AztecDiamond.
struct KernelMatrix {
  Eigen::MatrixXcd entries;  // rows: blacks, cols: whites (or transposed for inverses)
};

// Kasteleyn matrix K(b,w) of the two-periodic diamond, b = 1:
//   w = b+e1 : a(1-j)+j      w = b-e1 : aj+(1-j)
//   w = b+e2 : (aj+(1-j)) i  w = b-e2 : (a(1-j)+j) i
// with j the parity of the black vertex; zero on non-edges.
KernelMatrix build_K(const AztecDiamond& g);

// Single Kasteleyn entry without materializing the matrix.
cplx kasteleyn_entry(const AztecDiamond& g, Vec2i b, Vec2i w);

// |det K| in the log domain; equals the weighted count of dimer coverings.
double partition_function_abs(const AztecDiamond& g, int max_order = 12);
double log_partition_function(const AztecDiamond& g);

// Dense inverse (rows: whites, cols: blacks) with one step of iterative
// refinement; the K K^{-1} residual is checked to 1e-10 in max norm.
KernelMatrix invert_K(const AztecDiamond& g, const KernelMatrix& K);

struct EdgeSet {
  std::vector<std::pair<Vec2i, Vec2i>> edges;  // (black, white), all distinct
};

// Probability that all edges of E are simultaneously covered:
// det[ K(b_i,w_i) K^{-1}(w_j,b_i) ].
double edge_correlation(const AztecDiamond& g, const EdgeSet& E, const KernelMatrix& Kinv);

// Exhaustive generation, capped at order 4 (1024 coverings).
void enumerate_tilings(const AztecDiamond& g,
                       const std::function<void(const DimerConfig&)>& visit);
std::vector<DimerConfig> all_tilings(const AztecDiamond& g);

// Product of edge weights of one covering.
double config_weight(const AztecDiamond& g, const DimerConfig& c);

}  // namespace aztec

#endif
