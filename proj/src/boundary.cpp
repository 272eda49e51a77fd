#include "aztec/boundary.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "aztec/gas.hpp"
#include "aztec/shuffle.hpp"

namespace aztec {

ScalingFrame ScalingFrame::make(int m, double a, int M) {
  if (m < 1) throw std::invalid_argument("ScalingFrame: m >= 1 required");
  if (M < 1) throw std::invalid_argument("ScalingFrame: M >= 1 required");
  ModelParams p = make_params(4 * m, a);
  p.require_gas("ScalingFrame");
  ScalingFrame f;
  f.m = m;
  f.a = a;
  f.M = M;
  f.lambda1 = p.lambda1();
  f.lambda2 = p.lambda2();
  f.c0 = p.c0();
  f.xi = p.xi();
  f.curlyC = p.curlyC();
  f.rho = 4 * int(std::floor(m * (1.0 + f.xi)));
  return f;
}

std::vector<LineSpec> build_lines(const ScalingFrame& f, const std::vector<double>& betas) {
  for (size_t q = 1; q < betas.size(); ++q)
    if (!(betas[q] > betas[q - 1]))
      throw std::invalid_argument("build_lines: betas must be strictly increasing");
  std::vector<LineSpec> lines;
  const int n = f.n();
  for (size_t qi = 0; qi < betas.size(); ++qi)
    for (int k = 1; k <= f.M; ++k) {
      LineSpec L;
      L.q = int(qi) + 1;
      L.k = k;
      L.beta = betas[qi];
      L.B = f.beta_offset(betas[qi], k);
      L.tau_q = f.tau(betas[qi]);
      L.rho = f.rho;
      L.n = n;
      // t-range for which either parity point has both vertices in frame
      int absB = std::abs(L.B);
      // u(t,0) = rho + 2(t - tau); valid u in [|B|, 2n-1-|B|]
      int lo = L.tau_q + int(std::ceil((absB - f.rho) / 2.0));
      int hi = L.tau_q + int(std::floor((2 * n - 1 - absB - f.rho + 1) / 2.0));
      while (lo <= hi && !L.contains(lo, 0) && !L.contains(lo, 1)) ++lo;
      while (hi >= lo && !L.contains(hi, 0) && !L.contains(hi, 1)) --hi;
      if (lo > hi)
        throw std::invalid_argument("build_lines: line (q=" + std::to_string(L.q) +
                                    ",k=" + std::to_string(k) + ") leaves the diamond");
      L.t_lo = lo;
      L.t_hi = hi;
      lines.push_back(L);
    }
  return lines;
}

IntervalEmbed embed_interval(const ScalingFrame& f, const LineSpec& line, int p, double al,
                             double ar) {
  if (!(al < ar)) throw std::invalid_argument("embed_interval: empty interval");
  IntervalEmbed I;
  I.p = p;
  const double scale = f.lambda1 * std::cbrt(2.0 * f.m);
  I.t_lo = int(std::floor(al * scale));
  I.t_hi = int(std::floor(ar * scale));
  for (int t = I.t_lo; t <= I.t_hi; ++t)
    for (int eps = 0; eps < 2; ++eps)
      if (!line.contains(t, eps))
        throw std::invalid_argument("embed_interval: interval p=" + std::to_string(p) +
                                    " leaves line (q=" + std::to_string(line.q) +
                                    ",k=" + std::to_string(line.k) + ")");
  int t1 = line.u_of(I.t_lo, 1);   // odd
  int t2 = line.u_of(I.t_hi, 0) + 1;
  I.face_minus = {t1 + line.B, t1 - line.B};
  I.face_plus = {t2 + line.B, t2 - line.B};
  if (!AztecDiamond::a_face(I.face_minus) || !AztecDiamond::a_face(I.face_plus))
    throw std::logic_error("embed_interval: end faces are not a-faces");
  return I;
}

MeasureSample measure_from_config(const AztecDiamond& g, const DimerConfig& config,
                                  const ScalingFrame& frame, const std::vector<LineSpec>& lines,
                                  const std::vector<std::pair<double, double>>& intervals) {
  HeightField hf = height_field(g, config);
  const size_t Q = lines.size() / size_t(frame.M);
  MeasureSample out;
  out.mu.assign(intervals.size(), std::vector<double>(Q, 0.0));
  out.quanta.assign(intervals.size(), std::vector<long>(Q, 0));
  for (const LineSpec& L : lines) {
    for (size_t p = 0; p < intervals.size(); ++p) {
      IntervalEmbed I = embed_interval(frame, L, int(p), intervals[p].first, intervals[p].second);
      long dh = hf.at(I.face_plus.x, I.face_plus.y) - hf.at(I.face_minus.x, I.face_minus.y);
      long particles = 0;
      for (int t = I.t_lo; t <= I.t_hi; ++t)
        for (int eps = 0; eps < 2; ++eps)
          if (config.covered(g, L.y_of(t, eps), L.x_of(t, eps))) particles += (eps ? -1 : 1);
      if (dh != 4 * particles)
        throw std::runtime_error("measure_from_config: height route disagrees with particle route");
      out.quanta[p][L.q - 1] += dh;
    }
  }
  for (size_t p = 0; p < intervals.size(); ++p)
    for (size_t q = 0; q < Q; ++q) out.mu[p][q] = double(out.quanta[p][q]) / (4.0 * frame.M);
  return out;
}

namespace {

struct LinePoint {
  Vec2i x, y;  // white, black
  int eps = 0;
  int t = 0;
  const LineSpec* line = nullptr;
  cplx psi = 0.0;
};

std::vector<LinePoint> collect_support(const ScalingFrame& frame,
                                       const std::vector<LineSpec>& lines,
                                       const std::vector<std::pair<double, double>>& intervals,
                                       const std::vector<std::vector<cplx>>& w) {
  std::map<std::pair<int, int>, size_t> index;  // key: x(z)+y(z) summed coordinates
  std::vector<LinePoint> pts;
  for (const LineSpec& L : lines)
    for (size_t p = 0; p < intervals.size(); ++p) {
      IntervalEmbed I = embed_interval(frame, L, int(p), intervals[p].first, intervals[p].second);
      for (int t = I.t_lo; t <= I.t_hi; ++t)
        for (int eps = 0; eps < 2; ++eps) {
          Vec2i x = L.x_of(t, eps), y = L.y_of(t, eps);
          std::pair<int, int> key{x.x + y.x, x.y + y.y};
          auto [it, fresh] = index.try_emplace(key, pts.size());
          if (fresh) {
            LinePoint pt;
            pt.x = x;
            pt.y = y;
            pt.eps = eps;
            pt.t = t;
            pt.line = &L;
            pts.push_back(pt);
          }
          pts[it->second].psi += w[p][L.q - 1] * (eps ? -1.0 : 1.0);
        }
    }
  return pts;
}

cplx support_det(const std::vector<LinePoint>& pts, int M,
                 const std::function<cplx(const LinePoint&, const LinePoint&)>& kernel) {
  const int N = int(pts.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N);
  for (int i = 0; i < N; ++i) {
    cplx d = std::exp(pts[i].psi / double(M)) - 1.0;
    for (int j = 0; j < N; ++j) A(i, j) += d * kernel(pts[i], pts[j]);
  }
  return A.partialPivLu().determinant();
}

}  // namespace

cplx finite_fredholm(const AztecDiamond& g, const ScalingFrame& frame,
                     const std::vector<LineSpec>& lines,
                     const std::vector<std::pair<double, double>>& intervals,
                     const std::vector<std::vector<cplx>>& w) {
  if (g.n() > 32) throw std::invalid_argument("finite_fredholm: dense cap is n = 32");
  KernelMatrix K = build_K(g);
  KernelMatrix Kinv = invert_K(g, K);
  auto pts = collect_support(frame, lines, intervals, w);
  const cplx ai(0.0, g.params().a);
  return support_det(pts, frame.M, [&](const LinePoint& z, const LinePoint& zp) {
    return ai * Kinv.entries(g.white_index(zp.x), g.black_index(z.y));
  });
}

namespace {

// prefactor of (the conjugation taking Ktilde_{m,delta} to K_{m,delta});
// the i-exponent is y1 - x1' + 1: with the point parameterization in use,
// y1 - x1' + 1 = g3(z) - g3(z') + 2 eps(z'), which is what splits the
// phase into a similarity times (-1)^{eps'} and keeps the scaling limit of
// the Airy part positive
cplx conj_prefactor(const ScalingFrame& f, const LinePoint& z, const LinePoint& zp) {
  const ModelParams par = make_params(4 * f.m, f.a);
  long ip = z.y.x - zp.x.x + 1;
  long cexp2 = 2 + zp.x.x - zp.x.y + z.y.y - z.y.x;
  if (cexp2 % 2 != 0) throw std::logic_error("conjugation: odd curlyC exponent");
  double g1z = z.line->gamma1(z.t, f.lambda1, f.m);
  double g1zp = zp.line->gamma1(zp.t, f.lambda1, f.m);
  cplx denom = f.lambda1 * f.c0 * f.a * cplx(0, 1) * par.g(zp.eps, z.eps);
  return ipow(ip) * std::exp(g1zp - g1z) * std::pow(f.curlyC, double(cexp2 / 2)) / denom;
}

cplx km_gauge_factor(const ScalingFrame& f, const LinePoint& z, const LinePoint& zp,
                     const ModelParams& par) {
  return f.a * cplx(0, 1) / 2.0 * std::sqrt(1.0 - 2.0 * par.c()) * par.g(zp.eps, z.eps) *
         std::pow(f.curlyC, 2.0 * zp.eps - 2.0) * (zp.eps ? -1.0 : 1.0);
}

}  // namespace

cplx finite_fredholm_conjugated(const AztecDiamond& g, const ScalingFrame& frame,
                                const std::vector<LineSpec>& lines,
                                const std::vector<std::pair<double, double>>& intervals,
                                const std::vector<std::vector<cplx>>& w) {
  if (g.n() > 32) throw std::invalid_argument("finite_fredholm_conjugated: dense cap is n = 32");
  KernelMatrix K = build_K(g);
  KernelMatrix Kinv = invert_K(g, K);
  auto pts = collect_support(frame, lines, intervals, w);
  const ModelParams par = g.params();
  const cplx ai(0.0, frame.a);
  // K_m = K_{m,0} - K_{m,1}, both carried through the conjugation
  // prefactors; the gas part comes from the full-plane kernel, the Airy
  // part from (full-plane - exact finite).
  return support_det(pts, frame.M, [&](const LinePoint& z, const LinePoint& zp) {
    cplx pref = conj_prefactor(frame, z, zp);
    cplx kt0 = ai * full_plane_Kinv(frame.a, zp.x, z.y);
    cplx kt1 = kt0 - ai * Kinv.entries(g.white_index(zp.x), g.black_index(z.y));
    cplx km = pref * (kt0 - kt1);
    return km_gauge_factor(frame, z, zp, par) * km;
  });
}

double conjugated_gas_kernel(const ScalingFrame& f, const LineSpec& lz, int t, int eps,
                             const LineSpec& lzp, int tp, int epsp) {
  LinePoint z, zp;
  z.x = lz.x_of(t, eps);
  z.y = lz.y_of(t, eps);
  z.eps = eps;
  z.t = t;
  z.line = &lz;
  zp.x = lzp.x_of(tp, epsp);
  zp.y = lzp.y_of(tp, epsp);
  zp.eps = epsp;
  zp.t = tp;
  zp.line = &lzp;
  cplx kt0 = cplx(0, f.a) * full_plane_Kinv(f.a, zp.x, z.y);
  cplx v = conj_prefactor(f, z, zp) * kt0;
  if (std::abs(v.imag()) > 1e-8 * (std::abs(v.real()) + 1e-12))
    throw std::runtime_error("conjugated_gas_kernel: entry not real");
  return v.real();
}

double conjugated_airy_kernel(const AztecDiamond& g, const KernelMatrix& Kinv,
                              const ScalingFrame& f, const LineSpec& lz, int t, int eps,
                              const LineSpec& lzp, int tp, int epsp) {
  LinePoint z, zp;
  z.x = lz.x_of(t, eps);
  z.y = lz.y_of(t, eps);
  z.eps = eps;
  z.t = t;
  z.line = &lz;
  zp.x = lzp.x_of(tp, epsp);
  zp.y = lzp.y_of(tp, epsp);
  zp.eps = epsp;
  zp.t = tp;
  zp.line = &lzp;
  cplx ai(0, f.a);
  cplx kt0 = ai * full_plane_Kinv(f.a, zp.x, z.y);
  cplx kt1 = kt0 - ai * Kinv.entries(g.white_index(zp.x), g.black_index(z.y));
  cplx v = conj_prefactor(f, z, zp) * kt1;
  if (std::abs(v.imag()) > 1e-6 * (std::abs(v.real()) + 1e-10))
    throw std::runtime_error("conjugated_airy_kernel: entry not real");
  return v.real();
}

McLaplace mc_laplace(const ScalingFrame& frame, const std::vector<double>& betas,
                     const std::vector<std::pair<double, double>>& intervals,
                     const std::vector<std::vector<double>>& w, long samples, uint64_t seed,
                     int threads, const std::function<void(long)>& progress) {
  if (samples < 2) throw std::invalid_argument("mc_laplace: need at least two samples");
  auto lines = build_lines(frame, betas);
  AztecDiamond g(make_params(frame.n(), frame.a));
  ShuffleWeights cascade = build_cascade(frame.n(), frame.a);
  std::vector<double> X(size_t(samples), 0.0);

  auto worker = [&](long s_lo, long s_hi) {
    for (long s = s_lo; s < s_hi; ++s) {
      DimerConfig cfg = sample_shuffling(cascade, seed, uint64_t(s));
      MeasureSample ms = measure_from_config(g, cfg, frame, lines, intervals);
      double expo = 0.0;
      for (size_t p = 0; p < intervals.size(); ++p)
        for (size_t q = 0; q < betas.size(); ++q) expo += w[p][q] * ms.mu[p][q];
      X[size_t(s)] = std::exp(expo);
      if (progress && threads == 1) progress(s + 1);
    }
  };

  if (threads <= 1) {
    worker(0, samples);
  } else {
    std::vector<std::thread> pool;
    long chunk = (samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker, t * chunk, std::min(samples, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  McLaplace out;
  out.samples = samples;
  double mean = 0.0;
  for (double v : X) mean += v;
  mean /= double(samples);
  double var = 0.0;
  for (double v : X) var += (v - mean) * (v - mean);
  out.mean = mean;
  out.stderr_mean = std::sqrt(var / (double(samples) * double(samples - 1)));
  out.log_mean = std::log(mean);
  // jackknife on the log of the mean
  double lsum = 0.0;
  std::vector<double> theta(static_cast<size_t>(samples), 0.0);
  for (long i = 0; i < samples; ++i) {
    theta[size_t(i)] = std::log((mean * samples - X[size_t(i)]) / double(samples - 1));
    lsum += theta[size_t(i)];
  }
  lsum /= double(samples);
  double lvar = 0.0;
  for (double th : theta) lvar += (th - lsum) * (th - lsum);
  out.stderr_log = std::sqrt(lvar * double(samples - 1) / double(samples));
  return out;
}

}  // namespace aztec
