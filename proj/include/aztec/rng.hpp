#ifndef AZTEC_RNG_HPP
#define AZTEC_RNG_HPP

#include <cstdint>

namespace aztec {

// Counter-based generator: every output is a pure function of
// (seed, stream, counter), so parallel consumers that own disjoint
// streams replay identically regardless of scheduling.
//
// The mixing function is the splitmix64 finalizer
// (constants 0x9e3779b97f4a7c15, 0xbf58476d1ce4e5b9, 0x94d049bb133111eb).
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream)
      : state_(mix(seed ^ mix(stream ^ 0x6a09e667f3bcc909ull))), counter_(0) {}

  uint64_t next_u64() { return mix(state_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  // uniform in [0,1): top 53 bits of the counter word
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  uint64_t counter() const { return counter_; }

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
  uint64_t counter_;
};

}  // namespace aztec

#endif
