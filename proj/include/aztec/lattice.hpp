#ifndef AZTEC_LATTICE_HPP
#define AZTEC_LATTICE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aztec {

using cplx = std::complex<double>;

struct Vec2i {
  int x = 0, y = 0;
  friend Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(Vec2i a, Vec2i b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Vec2i a, Vec2i b) { return !(a == b); }
};

inline Vec2i rot90(Vec2i v) { return {-v.y, v.x}; }

// Lattice vectors of the diamond graph.
inline constexpr Vec2i kE1{1, 1};
inline constexpr Vec2i kE2{-1, 1};

// Direction of the white partner relative to a black vertex.
// Codes are the 2-bit values used in the serialized format.
inline constexpr Vec2i kDirVec[4] = {{1, 1}, {-1, -1}, {-1, 1}, {1, -1}};  // +e1,-e1,+e2,-e2

inline int dir_code(Vec2i d) {
  for (int c = 0; c < 4; ++c)
    if (kDirVec[c] == d) return c;
  throw std::invalid_argument("not a lattice direction");
}

// Model constants. b is fixed to 1 (rescaling both weights is a gauge).
// The derived constants are only defined in the gas regime 0 < a < 1.
struct ModelParams {
  int n = 0;       // diamond order
  int m = 0;       // n = 4m when the scaling frame is in play
  double a = 1.0;  // weight on edges of a-faces

  double c() const { return a / (1.0 + a * a); }

  void require_gas(const char* who) const {
    if (!(a > 0.0 && a < 1.0))
      throw std::domain_error(std::string(who) + ": requires 0 < a < 1 (gas phase)");
  }

  double xi() const {
    require_gas("xi");
    return -0.5 * std::sqrt(1.0 - 2.0 * c());
  }
  double c0() const {
    require_gas("c0");
    const double cc = c();
    return std::pow(1.0 - 2.0 * cc, 2.0 / 3.0) /
           std::cbrt(2.0 * cc * (1.0 + 2.0 * cc));
  }
  double lambda1() const {
    require_gas("lambda1");
    return std::sqrt(1.0 - 2.0 * c()) / (2.0 * c0());
  }
  double lambda2() const {
    require_gas("lambda2");
    const double cc = c();
    return std::pow(1.0 - 2.0 * cc, 1.5) / (2.0 * cc * c0() * c0());
  }
  // |G(i)| of the gas kernel; lies in (0,1).
  double curlyC() const {
    require_gas("curlyC");
    const double cc = c();
    return (1.0 - std::sqrt(1.0 - 2.0 * cc)) / std::sqrt(2.0 * cc);
  }
  // g-table indexed by the two vertex parities.
  cplx g(int eps1, int eps2) const {
    require_gas("g");
    const double r = std::sqrt(a * a + 1.0);
    const cplx i(0.0, 1.0);
    if (eps1 == 0 && eps2 == 0) return i * (r + a) / (1.0 - a);
    if (eps1 == 0 && eps2 == 1) return cplx((r + a - 1.0) / (std::sqrt(2.0 * a) * (1.0 - a)), 0.0);
    if (eps1 == 1 && eps2 == 0) return cplx(-(r + a - 1.0) / (std::sqrt(2.0 * a) * (1.0 - a)), 0.0);
    return i * (r - 1.0) / ((1.0 - a) * a);
  }
};

inline ModelParams make_params(int n, double a) {
  if (n <= 0) throw std::invalid_argument("diamond order must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("edge weight a must be positive");
  ModelParams p;
  p.n = n;
  p.m = n / 4;
  p.a = a;
  return p;
}

// Aztec diamond graph of order n in the square frame [0,2n]^2.
// Whites sit at (odd,even), blacks at (even,odd); edges join b to w with
// b - w in {+-e1, +-e2}. Faces live on the (i+j even) sublattice; the
// odd-odd faces with (i+j) mod 4 == 2 are the a-faces and carry weight a
// on all four of their edges, the odd-odd faces with (i+j) mod 4 == 0
// carry weight 1.
class AztecDiamond {
 public:
  explicit AztecDiamond(ModelParams params) : p_(params), n_(params.n) {}

  const ModelParams& params() const { return p_; }
  int n() const { return n_; }
  int num_whites() const { return n_ * (n_ + 1); }
  int num_blacks() const { return n_ * (n_ + 1); }

  bool in_frame(Vec2i v) const { return v.x >= 0 && v.x <= 2 * n_ && v.y >= 0 && v.y <= 2 * n_; }
  static bool white_parity(Vec2i v) { return (v.x & 1) == 1 && (v.y & 1) == 0; }
  static bool black_parity(Vec2i v) { return (v.x & 1) == 0 && (v.y & 1) == 1; }
  bool is_white(Vec2i v) const { return in_frame(v) && white_parity(v); }
  bool is_black(Vec2i v) const { return in_frame(v) && black_parity(v); }
  bool is_edge(Vec2i b, Vec2i w) const {
    if (!is_black(b) || !is_white(w)) return false;
    Vec2i d = w - b;
    for (Vec2i dv : kDirVec)
      if (d == dv) return true;
    return false;
  }

  // parity eps: 0 on (x+y) mod 4 == 1, 1 on (x+y) mod 4 == 3
  static int eps(Vec2i v) {
    int s = (v.x + v.y) & 3;
    if (s == 1) return 0;
    if (s == 3) return 1;
    throw std::invalid_argument("eps: not a vertex position");
  }

  // lexicographic (x2, x1) indexing, fixed across the project
  int white_index(Vec2i w) const { return (w.y / 2) * n_ + (w.x - 1) / 2; }
  int black_index(Vec2i b) const { return ((b.y - 1) / 2) * (n_ + 1) + b.x / 2; }
  Vec2i white_at(int i) const { return {2 * (i % n_) + 1, 2 * (i / n_)}; }
  Vec2i black_at(int i) const { return {2 * (i % (n_ + 1)), 2 * (i / (n_ + 1)) + 1}; }

  // The at most four white neighbours of a black vertex.
  int neighbors(Vec2i b, Vec2i out[4]) const {
    int k = 0;
    for (int c = 0; c < 4; ++c) {
      Vec2i w = b + kDirVec[c];
      if (in_frame(w)) out[k++] = w;
    }
    return k;
  }

  // The odd face holding this edge; every edge belongs to exactly one.
  static Vec2i odd_face(Vec2i b, Vec2i w) {
    Vec2i s{(b.x + w.x), (b.y + w.y)}, d = rot90(b - w);
    Vec2i f1{(s.x + d.x) / 2, (s.y + d.y) / 2};
    if (f1.x & 1) return f1;
    return {(s.x - d.x) / 2, (s.y - d.y) / 2};
  }

  static bool a_face(Vec2i f) { return ((f.x + f.y) & 3) == 2; }

  double edge_weight(Vec2i b, Vec2i w) const {
    return a_face(odd_face(b, w)) ? p_.a : 1.0;
  }

 private:
  ModelParams p_;
  int n_;
};

// A perfect matching, stored as the direction code of each black vertex's
// partner, in black-index order.
struct DimerConfig {
  int n = 0;
  std::vector<uint8_t> dir;  // size n(n+1)

  Vec2i white_of(const AztecDiamond& g, int black_idx) const {
    return g.black_at(black_idx) + kDirVec[dir[black_idx]];
  }
  bool covered(const AztecDiamond& g, Vec2i b, Vec2i w) const {
    return white_of(g, g.black_index(b)) == w;
  }
  friend bool operator==(const DimerConfig& a, const DimerConfig& b) {
    return a.n == b.n && a.dir == b.dir;
  }
};

// Throws unless config is a perfect matching of g.
void validate_config(const AztecDiamond& g, const DimerConfig& config);

// Height function on the faces (i+j even, 0 <= i,j <= 2n), pinned to 0 at
// the face (0,0). Crossing a covered edge changes the height by +-3, an
// uncovered one by -+1; the sign is fixed by the colour of the vertex to
// the left of the direction of travel.
struct HeightField {
  int n = 0;
  std::vector<int> h;  // (2n+1)^2, row-major j*(2n+1)+i; only i+j even entries are meaningful

  int at(int i, int j) const { return h[size_t(j) * (2 * n + 1) + i]; }
};

HeightField height_field(const AztecDiamond& g, const DimerConfig& config);

// Height increment crossing from face f to adjacent face f+d, |d|=(±1,±1).
int height_step(const AztecDiamond& g, const DimerConfig& config, Vec2i f, Vec2i d);

// Render/bookkeeping class of a dimer: direction of the white partner
// relative to the black vertex crossed with the parity of the black vertex.
int classify_dimer(const AztecDiamond& g, Vec2i black, Vec2i white);

}  // namespace aztec

#endif
