#ifndef AZTEC_SHUFFLE_HPP
#define AZTEC_SHUFFLE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "aztec/lattice.hpp"
#include "aztec/rng.hpp"

namespace aztec {

// Edge weights of one shuffle level, addressed by the odd face holding the
// edge and the position of the edge on that face.
// Position codes: 0 NE, 1 SE, 2 SW, 3 NW.
enum : int { kNE = 0, kSE = 1, kSW = 2, kNW = 3 };
inline constexpr Vec2i kPosVec[4] = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
inline int opp_pos(int p) { return p ^ 2; }

struct LevelWeights {
  int k = 0;
  std::vector<std::array<double, 4>> w;  // k*k odd faces, row-major ((y-1)/2)*k+(x-1)/2

  std::array<double, 4>& at(int ox, int oy) { return w[size_t((oy - 1) / 2) * k + (ox - 1) / 2]; }
  const std::array<double, 4>& at(int ox, int oy) const {
    return w[size_t((oy - 1) / 2) * k + (ox - 1) / 2];
  }
};

// Down cascade: order-n table is the physical two-periodic one (a on the
// a-faces, 1 elsewhere); each lower level is produced by urban renewal on
// the cells the edges slide into. Only the per-cell creation odds survive
// into the sampler; full tables are recomputable for diagnostics.
struct ShuffleWeights {
  int n = 0;
  double a = 1.0;
  // create_prob[k-1]: order-k table of P(fill a fresh cell with the NE/SW pair)
  std::vector<std::vector<double>> create_prob;
};

LevelWeights physical_weights(int n, double a);
LevelWeights renew_weights(const LevelWeights& upper);  // order k -> k-1
ShuffleWeights build_cascade(int n, double a);

// Stepwise generation state. After step() to order k the configuration is a
// perfect matching of the order-k diamond.
class ShuffleState {
 public:
  ShuffleState(std::shared_ptr<const ShuffleWeights> weights, uint64_t seed, uint64_t stream);

  int order() const { return k_; }
  void step();                    // order k -> k+1
  DimerConfig config() const;     // matching of the current order
  uint64_t draws_used() const { return rng_.counter(); }

 private:
  std::shared_ptr<const ShuffleWeights> wts_;
  CounterRng rng_;
  int k_ = 0;
  int stride_ = 0;
  std::vector<int8_t> cur_, next_;   // per-vertex: -1 free, blacks 0..3 dir code, whites 4
  std::vector<uint8_t> mask_;        // per odd face of the next order: slid-dimer positions
};

DimerConfig sample_shuffling(const ShuffleWeights& wts, uint64_t seed, uint64_t stream);
DimerConfig sample_shuffling(const AztecDiamond& g, uint64_t seed, uint64_t stream = 0);

// Reference implementation of one growth step, coins supplied by the caller
// (one call per fresh cell, raster order, argument = P(NE/SW pair)). The
// exact-law tests enumerate coin paths through this; it also cross-checks
// the buffered fast path.
DimerConfig shuffle_step_reference(const ShuffleWeights& wts, const DimerConfig& mk,
                                   const std::function<bool(double)>& coin);

}  // namespace aztec

#endif
