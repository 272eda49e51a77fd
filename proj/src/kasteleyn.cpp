#include "aztec/kasteleyn.hpp"

#include <Eigen/LU>
#include <cmath>

namespace aztec {

cplx kasteleyn_entry(const AztecDiamond& g, Vec2i b, Vec2i w) {
  if (!g.is_edge(b, w)) return {0.0, 0.0};
  const double a = g.params().a;
  const int j = AztecDiamond::eps(b);
  Vec2i d = w - b;
  if (d == kE1) return {a * (1 - j) + j, 0.0};
  if (d == Vec2i{-1, -1}) return {a * j + (1 - j), 0.0};
  if (d == kE2) return {0.0, a * j + (1 - j)};
  return {0.0, a * (1 - j) + j};  // w = b - e2
}

KernelMatrix build_K(const AztecDiamond& g) {
  const int N = g.num_blacks();
  KernelMatrix K;
  K.entries = Eigen::MatrixXcd::Zero(N, N);
  for (int bi = 0; bi < N; ++bi) {
    Vec2i b = g.black_at(bi);
    Vec2i nb[4];
    int k = g.neighbors(b, nb);
    for (int t = 0; t < k; ++t) K.entries(bi, g.white_index(nb[t])) = kasteleyn_entry(g, b, nb[t]);
  }
  return K;
}

double log_partition_function(const AztecDiamond& g) {
  KernelMatrix K = build_K(g);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(K.entries);
  double logabs = 0.0;
  const auto& U = lu.matrixLU();
  for (int i = 0; i < U.rows(); ++i) logabs += std::log(std::abs(U(i, i)));
  return logabs;
}

double partition_function_abs(const AztecDiamond& g, int max_order) {
  if (g.n() > max_order) throw std::invalid_argument("partition_function_abs: order above dense cap");
  return std::exp(log_partition_function(g));
}

KernelMatrix invert_K(const AztecDiamond& g, const KernelMatrix& K) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(K.entries);
  Eigen::MatrixXcd X = lu.inverse();
  // one Newton step: X <- X(2I - K X)
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(X.rows(), X.cols()) - K.entries * X;
  double res = R.cwiseAbs().maxCoeff();
  if (res > 1e-12) X = X + X * R;
  R = Eigen::MatrixXcd::Identity(X.rows(), X.cols()) - K.entries * X;
  // The inverse has exponentially large entries toward the frozen corners
  // (|X|max ~ 1.6e7 at n = 24, a = 1/2), so the max-norm residual cannot
  // beat the f64 floor eps * |K| * |X|max once n grows; accept that floor.
  double floor_tol = 2.2e-13 * X.cwiseAbs().maxCoeff();
  if (R.cwiseAbs().maxCoeff() > std::max(1e-10, floor_tol))
    throw std::runtime_error("invert_K: residual above tolerance, matrix near singular");
  (void)g;
  KernelMatrix out;
  out.entries = std::move(X);
  return out;
}

double edge_correlation(const AztecDiamond& g, const EdgeSet& E, const KernelMatrix& Kinv) {
  const int r = int(E.edges.size());
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (E.edges[i] == E.edges[j]) throw std::invalid_argument("edge_correlation: repeated edge");
  Eigen::MatrixXcd L(r, r);
  for (int i = 0; i < r; ++i) {
    auto [bi, wi] = E.edges[i];
    cplx kbw = kasteleyn_entry(g, bi, wi);
    if (kbw == cplx(0.0, 0.0)) throw std::invalid_argument("edge_correlation: pair is not an edge");
    for (int j = 0; j < r; ++j) {
      auto wj = E.edges[j].second;
      L(i, j) = kbw * Kinv.entries(g.white_index(wj), g.black_index(bi));
    }
  }
  cplx det = L.partialPivLu().determinant();
  if (std::abs(det.imag()) > 1e-10)
    throw std::runtime_error("edge_correlation: imaginary part above tolerance");
  return det.real();
}

namespace {

void enumerate_rec(const AztecDiamond& g, int bi, DimerConfig& c, std::vector<uint8_t>& used,
                   const std::function<void(const DimerConfig&)>& visit) {
  if (bi == g.num_blacks()) {
    visit(c);
    return;
  }
  Vec2i b = g.black_at(bi);
  for (int code = 0; code < 4; ++code) {
    Vec2i w = b + kDirVec[code];
    if (!g.is_white(w)) continue;
    int wi = g.white_index(w);
    if (used[wi]) continue;
    used[wi] = 1;
    c.dir[bi] = uint8_t(code);
    enumerate_rec(g, bi + 1, c, used, visit);
    used[wi] = 0;
  }
}

}  // namespace

void enumerate_tilings(const AztecDiamond& g,
                       const std::function<void(const DimerConfig&)>& visit) {
  if (g.n() > 4)
    throw std::invalid_argument("enumerate_tilings: refusing orders above 4 (too many coverings)");
  DimerConfig c;
  c.n = g.n();
  c.dir.assign(g.num_blacks(), 0);
  std::vector<uint8_t> used(g.num_whites(), 0);
  enumerate_rec(g, 0, c, used, visit);
}

std::vector<DimerConfig> all_tilings(const AztecDiamond& g) {
  std::vector<DimerConfig> out;
  enumerate_tilings(g, [&](const DimerConfig& c) { out.push_back(c); });
  return out;
}

double config_weight(const AztecDiamond& g, const DimerConfig& c) {
  double w = 1.0;
  for (int bi = 0; bi < g.num_blacks(); ++bi)
    w *= g.edge_weight(g.black_at(bi), c.white_of(g, bi));
  return w;
}

}  // namespace aztec
