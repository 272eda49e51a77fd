#ifndef AZTEC_DETERMINANTAL_HPP
#define AZTEC_DETERMINANTAL_HPP

#include <cstdint>

#include "aztec/kasteleyn.hpp"
#include "aztec/lattice.hpp"

namespace aztec {

// Exact sampling from the dimer measure by running through the black
// vertices in index order; the conditional law of each match is read off
// the current reduced inverse Kasteleyn matrix, which is updated by a
// rank-one (Schur) step after every decision. Feasible up to n ~ 32.
//
// One uniform is consumed per black vertex. Conditional probabilities
// outside [-1e-9, 1+1e-9] abort: they signal lost precision.
DimerConfig sample_exact_determinantal(const AztecDiamond& g, uint64_t seed, uint64_t stream = 0);

// Variant reusing a prebuilt K and K^{-1} (they do not depend on the draw).
DimerConfig sample_exact_determinantal(const AztecDiamond& g, const KernelMatrix& K,
                                       const KernelMatrix& Kinv, uint64_t seed,
                                       uint64_t stream = 0);

}  // namespace aztec

#endif
