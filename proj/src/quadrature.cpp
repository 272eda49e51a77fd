#include "aztec/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace aztec {

namespace {

GaussLegendre compute_gl(int n) {
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    gl.x[i] = -x;
    gl.x[n - 1 - i] = x;
    gl.w[i] = gl.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

std::map<int, GaussLegendre> cache;
std::mutex cache_mutex;

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

void gl_map(const GaussLegendre& gl, double a, double b, std::vector<double>& x,
            std::vector<double>& w) {
  const size_t n = gl.x.size();
  x.resize(n);
  w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (size_t i = 0; i < n; ++i) {
    x[i] = mid + half * gl.x[i];
    w[i] = half * gl.w[i];
  }
}

}  // namespace aztec
