#include "aztec/determinantal.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aztec/rng.hpp"

namespace aztec {

DimerConfig sample_exact_determinantal(const AztecDiamond& g, const KernelMatrix& K,
                                       const KernelMatrix& Kinv, uint64_t seed, uint64_t stream) {
  const int N = g.num_blacks();
  if (g.n() > 32) throw std::invalid_argument("sample_exact_determinantal: dense cap is n = 32");

  // C holds the inverse of K restricted to the still-unmatched rows/cols.
  // Physical row/col identities are tracked through live index lists.
  Eigen::MatrixXcd C = Kinv.entries;  // rows: whites, cols: blacks
  std::vector<int> wpos(N), bpos(N);  // vertex index -> position in C, -1 when retired
  std::vector<int> wat(N), bat(N);    // position in C -> vertex index
  std::iota(wpos.begin(), wpos.end(), 0);
  std::iota(bpos.begin(), bpos.end(), 0);
  std::iota(wat.begin(), wat.end(), 0);
  std::iota(bat.begin(), bat.end(), 0);
  int live = N;

  CounterRng rng(seed, stream);
  DimerConfig cfg;
  cfg.n = g.n();
  cfg.dir.assign(N, 0);

  auto retire_white = [&](int wi) {
    int p = wpos[wi], last = live - 1;
    if (p != last) {
      C.row(p).head(live) = C.row(last).head(live);
      wpos[wat[last]] = p;
      wat[p] = wat[last];
    }
    wpos[wi] = -1;
  };
  auto retire_black = [&](int bi) {
    int p = bpos[bi], last = live - 1;
    if (p != last) {
      C.col(p).head(live) = C.col(last).head(live);
      bpos[bat[last]] = p;
      bat[p] = bat[last];
    }
    bpos[bi] = -1;
  };

  for (int bi = 0; bi < N; ++bi) {
    Vec2i b = g.black_at(bi);
    Vec2i nb[4];
    int deg = g.neighbors(b, nb);
    double p[4];
    double total = 0.0;
    int row = bpos[bi];
    for (int t = 0; t < deg; ++t) {
      int wi = g.white_index(nb[t]);
      if (wpos[wi] < 0) {
        p[t] = 0.0;
        continue;
      }
      cplx v = K.entries(bi, wi) * C(wpos[wi], row);
      if (std::abs(v.imag()) > 1e-9 || v.real() < -1e-9 || v.real() > 1.0 + 1e-9)
        throw std::runtime_error("sample_exact_determinantal: conditional probability out of range");
      p[t] = std::max(0.0, v.real());
      total += p[t];
    }
    if (total <= 0.0) throw std::runtime_error("sample_exact_determinantal: no available match");
    double u = rng.next_double() * total;
    int pick = deg - 1;
    for (int t = 0; t < deg; ++t) {
      u -= p[t];
      if (u <= 0.0) {
        pick = t;
        break;
      }
    }
    while (p[pick] == 0.0) --pick;

    Vec2i w = nb[pick];
    cfg.dir[bi] = uint8_t(dir_code(w - b));
    int wi = g.white_index(w);

    // Schur update removing row b, col w from the reduced K
    int rw = wpos[wi], cb = bpos[bi];
    cplx pivot = C(rw, cb);
    if (std::abs(pivot) < 1e-14)
      throw std::runtime_error("sample_exact_determinantal: vanishing pivot");
    Eigen::VectorXcd colv = C.col(cb).head(live);
    Eigen::RowVectorXcd rowv = C.row(rw).head(live);
    C.topLeftCorner(live, live).noalias() -= (colv / pivot) * rowv;
    retire_white(wi);
    retire_black(bi);
    --live;
  }
  return cfg;
}

DimerConfig sample_exact_determinantal(const AztecDiamond& g, uint64_t seed, uint64_t stream) {
  KernelMatrix K = build_K(g);
  KernelMatrix Kinv = invert_K(g, K);
  return sample_exact_determinantal(g, K, Kinv, seed, stream);
}

}  // namespace aztec
