#ifndef AZTEC_QUADRATURE_HPP
#define AZTEC_QUADRATURE_HPP

#include <utility>
#include <vector>

namespace aztec {

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x, w;
};
const GaussLegendre& gauss_legendre(int n);  // cached per order

// nodes/weights mapped to [a,b]
void gl_map(const GaussLegendre& gl, double a, double b, std::vector<double>& x,
            std::vector<double>& w);

}  // namespace aztec

#endif
