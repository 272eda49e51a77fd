#ifndef AZTEC_AIRY_HPP
#define AZTEC_AIRY_HPP

namespace aztec {

struct AiryEval {
  double zeta = 0.0;
  double Ai = 0.0;
  double Aip = 0.0;
};

// Ai and Ai' to ~1e-12 absolute on [-10,10]; supported range |zeta| <= 30.
// Maclaurin series up to |zeta| = 5, compensated (double-double) Maclaurin
// in the band where the plain series loses digits to cancellation and the
// asymptotic series is not yet accurate, asymptotic expansions beyond.
AiryEval airy(double zeta);

// Unchecked range, used by kernel integrals; Ai underflows to 0 far right.
double airy_ai_unchecked(double zeta);
double airy_ai_prime_unchecked(double zeta);

}  // namespace aztec

#endif
