#include "aztec/lattice.hpp"

#include <cmath>
#include <deque>

namespace aztec {

void validate_config(const AztecDiamond& g, const DimerConfig& config) {
  if (config.n != g.n()) throw std::invalid_argument("config/diamond order mismatch");
  if ((int)config.dir.size() != g.num_blacks())
    throw std::invalid_argument("config has wrong number of dimers");
  std::vector<uint8_t> white_used(g.num_whites(), 0);
  for (int bi = 0; bi < g.num_blacks(); ++bi) {
    if (config.dir[bi] > 3) throw std::invalid_argument("bad direction code");
    Vec2i b = g.black_at(bi);
    Vec2i w = b + kDirVec[config.dir[bi]];
    if (!g.is_white(w)) throw std::invalid_argument("dimer leaves the diamond");
    if (white_used[g.white_index(w)]++)
      throw std::invalid_argument("white vertex covered twice: not a matching");
  }
}

int height_step(const AztecDiamond& g, const DimerConfig& config, Vec2i f, Vec2i d) {
  Vec2i r = rot90(d);
  Vec2i left{f.x + (d.x + r.x) / 2, f.y + (d.y + r.y) / 2};
  Vec2i right{f.x + (d.x - r.x) / 2, f.y + (d.y - r.y) / 2};
  bool left_black = AztecDiamond::black_parity(left);
  Vec2i b = left_black ? left : right;
  Vec2i w = left_black ? right : left;
  bool cov = config.covered(g, b, w);
  if (left_black) return cov ? 3 : -1;
  return cov ? -3 : 1;
}

HeightField height_field(const AztecDiamond& g, const DimerConfig& config) {
  validate_config(g, config);
  const int n = g.n(), L = 2 * n + 1;
  HeightField hf;
  hf.n = n;
  hf.h.assign(size_t(L) * L, 0);
  std::vector<uint8_t> seen(size_t(L) * L, 0);
  auto idx = [L](Vec2i f) { return size_t(f.y) * L + f.x; };

  const Vec2i steps[4] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
  std::deque<Vec2i> queue{{0, 0}};
  seen[0] = 1;
  while (!queue.empty()) {
    Vec2i f = queue.front();
    queue.pop_front();
    for (Vec2i d : steps) {
      Vec2i f2 = f + d;
      if (f2.x < 0 || f2.x > 2 * n || f2.y < 0 || f2.y > 2 * n) continue;
      int v = hf.h[idx(f)] + height_step(g, config, f, d);
      if (!seen[idx(f2)]) {
        seen[idx(f2)] = 1;
        hf.h[idx(f2)] = v;
        queue.push_back(f2);
      } else if (hf.h[idx(f2)] != v) {
        throw std::runtime_error("height function inconsistent: non-matching increments");
      }
    }
  }
  return hf;
}

int classify_dimer(const AztecDiamond& g, Vec2i black, Vec2i white) {
  if (!g.is_edge(black, white)) throw std::invalid_argument("classify_dimer: not an edge");
  return dir_code(white - black) + 4 * AztecDiamond::eps(black);
}

}  // namespace aztec
