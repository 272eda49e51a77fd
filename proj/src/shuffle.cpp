#include "aztec/shuffle.hpp"

#include <cassert>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace aztec {

LevelWeights physical_weights(int n, double a) {
  LevelWeights lw;
  lw.k = n;
  lw.w.assign(size_t(n) * n, {1.0, 1.0, 1.0, 1.0});
  for (int oy = 1; oy <= 2 * n - 1; oy += 2)
    for (int ox = 1; ox <= 2 * n - 1; ox += 2)
      if (((ox + oy) & 3) == 2) lw.at(ox, oy) = {a, a, a, a};
  return lw;
}

namespace {

inline double delta_of(const std::array<double, 4>& w) {
  return w[kNE] * w[kSW] + w[kNW] * w[kSE];
}

void normalize(LevelWeights& lw) {
  double mx = 0.0;
  for (auto& q : lw.w)
    for (double v : q) mx = std::max(mx, v);
  // power-of-two rescale keeps weight ratios bit exact
  double s = std::ldexp(1.0, -std::ilogb(mx));
  for (auto& q : lw.w)
    for (double& v : q) v *= s;
}

}  // namespace

LevelWeights renew_weights(const LevelWeights& upper) {
  const int k = upper.k;
  if (k < 2) throw std::invalid_argument("renew_weights: nothing below order 1");
  LevelWeights lw;
  lw.k = k - 1;
  lw.w.assign(size_t(k - 1) * (k - 1), {0, 0, 0, 0});
  for (int oy = 1; oy <= 2 * (k - 1) - 1; oy += 2)
    for (int ox = 1; ox <= 2 * (k - 1) - 1; ox += 2) {
      auto& q = lw.at(ox, oy);
      for (int p = 0; p < 4; ++p) {
        // the order-(k-1) edge at (o,p) slides into cell c one level up
        int cx = ox + 1 + kPosVec[p].x, cy = oy + 1 + kPosVec[p].y;
        const auto& cw = upper.at(cx, cy);
        q[p] = cw[opp_pos(p)] / delta_of(cw);
      }
    }
  normalize(lw);
  return lw;
}

ShuffleWeights build_cascade(int n, double a) {
  if (n < 1) throw std::invalid_argument("build_cascade: order must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("build_cascade: weight must be positive");
  ShuffleWeights sw;
  sw.n = n;
  sw.a = a;
  sw.create_prob.resize(n);
  LevelWeights lw = physical_weights(n, a);
  for (int k = n;; --k) {
    auto& pk = sw.create_prob[k - 1];
    pk.resize(size_t(k) * k);
    for (size_t f = 0; f < pk.size(); ++f) {
      const auto& q = lw.w[f];
      pk[f] = q[kNE] * q[kSW] / delta_of(q);
    }
    if (k == 1) break;
    lw = renew_weights(lw);
  }
  return sw;
}

ShuffleState::ShuffleState(std::shared_ptr<const ShuffleWeights> weights, uint64_t seed,
                           uint64_t stream)
    : wts_(std::move(weights)), rng_(seed, stream) {
  stride_ = 2 * wts_->n + 1;
  cur_.assign(size_t(stride_) * stride_, -1);
  next_.assign(size_t(stride_) * stride_, -1);
  mask_.assign(size_t(wts_->n) * wts_->n, 0);
}

void ShuffleState::step() {
  const int k = k_;
  if (k >= wts_->n) throw std::logic_error("ShuffleState: already at full order");
  const int S = stride_;
  const int kn = k + 1;  // next order
  auto vpos = [S](int x, int y) { return size_t(y) * S + x; };
  auto fpos = [kn](int ox, int oy) { return size_t((oy - 1) / 2) * kn + (ox - 1) / 2; };

  // slide pass: mark target positions of every dimer of the order-k matching
  std::memset(mask_.data(), 0, size_t(kn) * kn);
  for (int by = 1; by <= 2 * k - 1; by += 2)
    for (int bx = 0; bx <= 2 * k; bx += 2) {
      int8_t d = cur_[vpos(bx, by)];
      assert(d >= 0 && d < 4);
      int wx = bx + kDirVec[d].x, wy = by + kDirVec[d].y;
      // odd face of the edge and the position vector within it
      int fx = (bx + wx + by - wy) / 2, fy = (by + wy + wx - bx) / 2;
      if (!(fx & 1)) {
        fx = (bx + wx - by + wy) / 2;
        fy = (by + wy - wx + bx) / 2;
      }
      int vx = bx - fx, vy = wy - fy;             // = kPosVec[P]
      int tx = fx + 1 + vx, ty = fy + 1 + vy;     // target face, next frame
      int p = (vx > 0) ? (vy > 0 ? kNE : kSE) : (vy > 0 ? kNW : kSW);
      mask_[fpos(tx, ty)] |= uint8_t(1u << p);
    }

  // clear next matching over the new frame
  for (int y = 0; y <= 2 * kn; ++y)
    std::memset(next_.data() + vpos(0, y), 0xff, size_t(2 * kn + 1));

  // destruction + placement: opposite pairs landing on one face annihilate
  for (int oy = 1; oy <= 2 * kn - 1; oy += 2)
    for (int ox = 1; ox <= 2 * kn - 1; ox += 2) {
      uint8_t m = mask_[fpos(ox, oy)];
      if (!m) continue;
      if (m == ((1u << kNE) | (1u << kSW)) || m == ((1u << kNW) | (1u << kSE))) continue;
      assert((m & (m - 1)) == 0);  // otherwise a single position bit
      int p = (m & 1) ? kNE : (m & 2) ? kSE : (m & 4) ? kSW : kNW;
      int vx = kPosVec[p].x, vy = kPosVec[p].y;
      int bx2 = ox + vx, wy2 = oy + vy;
      next_[vpos(bx2, oy)] = int8_t(dir_code({ox - bx2, wy2 - oy}));
      next_[vpos(ox, wy2)] = 4;
    }

  // creation: every fully free cell gets a fresh opposite pair
  const std::vector<double>& pk = wts_->create_prob[kn - 1];
  for (int oy = 1; oy <= 2 * kn - 1; oy += 2)
    for (int ox = 1; ox <= 2 * kn - 1; ox += 2) {
      if (next_[vpos(ox, oy + 1)] >= 0 || next_[vpos(ox + 1, oy)] >= 0 ||
          next_[vpos(ox, oy - 1)] >= 0 || next_[vpos(ox - 1, oy)] >= 0)
        continue;
      bool ne_sw = rng_.next_double() < pk[fpos(ox, oy)];
      if (ne_sw) {
        next_[vpos(ox + 1, oy)] = int8_t(dir_code({-1, 1}));  // E -> N
        next_[vpos(ox - 1, oy)] = int8_t(dir_code({1, -1}));  // W -> S
      } else {
        next_[vpos(ox - 1, oy)] = int8_t(dir_code({1, 1}));   // W -> N
        next_[vpos(ox + 1, oy)] = int8_t(dir_code({-1, -1})); // E -> S
      }
      next_[vpos(ox, oy + 1)] = 4;
      next_[vpos(ox, oy - 1)] = 4;
    }

  cur_.swap(next_);
  k_ = kn;
}

DimerConfig ShuffleState::config() const {
  const int k = k_, S = stride_;
  DimerConfig c;
  c.n = k;
  c.dir.resize(size_t(k) * (k + 1));
  size_t i = 0;
  for (int by = 1; by <= 2 * k - 1; by += 2)
    for (int bx = 0; bx <= 2 * k; bx += 2) {
      int8_t d = cur_[size_t(by) * S + bx];
      if (d < 0 || d > 3) throw std::logic_error("ShuffleState: uncovered black vertex");
      c.dir[i++] = uint8_t(d);
    }
  return c;
}

DimerConfig sample_shuffling(const ShuffleWeights& wts, uint64_t seed, uint64_t stream) {
  ShuffleState st(std::shared_ptr<const ShuffleWeights>(&wts, [](const ShuffleWeights*) {}), seed,
                  stream);
  while (st.order() < wts.n) st.step();
  return st.config();
}

DimerConfig sample_shuffling(const AztecDiamond& g, uint64_t seed, uint64_t stream) {
  ShuffleWeights wts = build_cascade(g.n(), g.params().a);
  return sample_shuffling(wts, seed, stream);
}

DimerConfig shuffle_step_reference(const ShuffleWeights& wts, const DimerConfig& mk,
                                   const std::function<bool(double)>& coin) {
  const int k = mk.n, kn = k + 1;
  if (kn > wts.n) throw std::invalid_argument("shuffle_step_reference: beyond cascade order");
  AztecDiamond gk(make_params(std::max(k, 1), wts.a));
  std::map<std::pair<int, int>, uint8_t> mask;  // target odd face -> position bits
  if (k > 0) {
    for (int bi = 0; bi < gk.num_blacks(); ++bi) {
      Vec2i b = gk.black_at(bi);
      Vec2i w = b + kDirVec[mk.dir[bi]];
      Vec2i o = AztecDiamond::odd_face(b, w);
      int vx = b.x - o.x, vy = w.y - o.y;
      int p = (vx > 0) ? (vy > 0 ? kNE : kSE) : (vy > 0 ? kNW : kSW);
      mask[{o.x + 1 + vx, o.y + 1 + vy}] |= uint8_t(1u << p);
    }
  }
  AztecDiamond gn(make_params(kn, wts.a));
  std::vector<int8_t> cover(size_t(2 * kn + 1) * (2 * kn + 1), 0);
  auto cov = [&](Vec2i v) -> int8_t& { return cover[size_t(v.y) * (2 * kn + 1) + v.x]; };
  DimerConfig out;
  out.n = kn;
  out.dir.assign(size_t(kn) * (kn + 1), 255);
  auto place = [&](Vec2i o, int p) {
    Vec2i b{o.x + kPosVec[p].x, o.y};
    Vec2i w{o.x, o.y + kPosVec[p].y};
    out.dir[gn.black_index(b)] = uint8_t(dir_code(w - b));
    cov(b) = 1;
    cov(w) = 1;
  };
  for (auto& [key, m] : mask) {
    if (m == ((1u << kNE) | (1u << kSW)) || m == ((1u << kNW) | (1u << kSE))) continue;
    if ((m & (m - 1)) != 0) throw std::logic_error("shuffle_step_reference: bad slide mask");
    int p = (m & 1) ? kNE : (m & 2) ? kSE : (m & 4) ? kSW : kNW;
    place({key.first, key.second}, p);
  }
  const std::vector<double>& pk = wts.create_prob[kn - 1];
  for (int oy = 1; oy <= 2 * kn - 1; oy += 2)
    for (int ox = 1; ox <= 2 * kn - 1; ox += 2) {
      if (cov({ox, oy + 1}) || cov({ox + 1, oy}) || cov({ox, oy - 1}) || cov({ox - 1, oy}))
        continue;
      double p = pk[size_t((oy - 1) / 2) * kn + (ox - 1) / 2];
      if (coin(p)) {
        place({ox, oy}, kNE);
        place({ox, oy}, kSW);
      } else {
        place({ox, oy}, kNW);
        place({ox, oy}, kSE);
      }
    }
  for (uint8_t d : out.dir)
    if (d > 3) throw std::logic_error("shuffle_step_reference: uncovered vertex after creation");
  return out;
}

}  // namespace aztec
