#include <doctest.h>

#include "aztec/boundary.hpp"
#include "aztec/determinantal.hpp"
#include "aztec/gas.hpp"
#include "aztec/rng.hpp"
#include "aztec/shuffle.hpp"

using namespace aztec;

TEST_CASE("scaling frame and line construction") {
  ScalingFrame f = ScalingFrame::make(2, 0.5, 1);
  CHECK(f.n() == 8);
  CHECK(f.rho % 4 == 0);
  CHECK(f.rho == 4 * int(std::floor(2 * (1.0 - 0.5 * std::sqrt(0.2)))));
  CHECK(f.tau(0.0) == 0);

  auto lines = build_lines(f, {0.0});
  REQUIRE(lines.size() == 1);
  const LineSpec& L = lines[0];
  AztecDiamond g(make_params(f.n(), f.a));
  SUBCASE("parameterization is self-inverse and points sit on the graph") {
    for (int t = L.t_lo; t <= L.t_hi; ++t)
      for (int eps = 0; eps < 2; ++eps) {
        if (!L.contains(t, eps)) continue;
        Vec2i x = L.x_of(t, eps), y = L.y_of(t, eps);
        CHECK(g.is_white(x));
        CHECK(g.is_black(y));
        CHECK(AztecDiamond::eps(x) == eps);
        CHECK(AztecDiamond::eps(y) == eps);
        // the edge joins them across an a-face
        CHECK(g.is_edge(y, x));
        CHECK(AztecDiamond::a_face(AztecDiamond::odd_face(y, x)));
        // u -> t round trip
        int u = L.u_of(t, eps);
        CHECK((u - L.rho + eps) / 2 + L.tau_q == t);
      }
  }
  SUBCASE("clipped range is maximal") {
    CHECK(!L.contains(L.t_lo - 1, 0));
    CHECK(!L.contains(L.t_lo - 1, 1));
    CHECK(!L.contains(L.t_hi + 1, 0));
    CHECK((L.contains(L.t_hi, 0) || L.contains(L.t_hi, 1)));
  }
  SUBCASE("offset lines leave the diamond eventually") {
    CHECK_THROWS_WITH_AS(build_lines(ScalingFrame::make(2, 0.5, 40), {0.0}),
                         doctest::Contains("leaves the diamond"), std::invalid_argument);
  }
}

TEST_CASE("gamma identities on line points") {
  ScalingFrame f = ScalingFrame::make(2, 0.5, 2);
  auto lines = build_lines(f, {-0.3, 0.4});
  CounterRng rng(2718, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const LineSpec& L1 = lines[rng.next_u64() % lines.size()];
    const LineSpec& L2 = lines[rng.next_u64() % lines.size()];
    int t1 = L1.t_lo + int(rng.next_u64() % uint64_t(L1.t_hi - L1.t_lo + 1));
    int t2 = L2.t_lo + int(rng.next_u64() % uint64_t(L2.t_hi - L2.t_lo + 1));
    int e1 = int(rng.next_u64() & 1), e2 = int(rng.next_u64() & 1);
    if (!L1.contains(t1, e1) || !L2.contains(t2, e2)) continue;
    Vec2i y = L1.y_of(t1, e1);        // y(z)
    Vec2i xp = L2.x_of(t2, e2);       // x(z')
    // (2 + x1' - x2' + y2 - y1)/2 = g2(z') - g2(z) + 2 - 2 eps'
    long lhs2 = 2 + xp.x - xp.y + y.y - y.x;
    long rhs2 = 2 * (L2.gamma2(e2) - L1.gamma2(e1) + 2 - 2 * e2);
    CHECK(lhs2 == rhs2);
    // y1 - x1' - 1 = g3(z) - g3(z') + 2 eps' - 2 exactly (the -2 makes the
    // i-power split into a similarity times a constant phase)
    long lhs3 = y.x - xp.x - 1;
    long rhs3 = L1.gamma3(t1) - L2.gamma3(t2) + 2 * e2 - 2;
    CHECK(lhs3 == rhs3);
  }
}

// first/last t carrying both parities of line points
static std::pair<int, int> interior_range(const aztec::LineSpec& L) {
  int lo = L.t_lo, hi = L.t_hi;
  while (lo <= hi && !(L.contains(lo, 0) && L.contains(lo, 1))) ++lo;
  while (hi >= lo && !(L.contains(hi, 0) && L.contains(hi, 1))) --hi;
  return {lo, hi};
}

TEST_CASE("measure from config: routes agree on all 1024 order-4 tilings") {
  const double a = 0.5;
  ScalingFrame f = ScalingFrame::make(1, a, 1);
  AztecDiamond g(make_params(4, a));
  auto lines = build_lines(f, {0.0});
  const LineSpec& L = lines[0];
  // a two-point interval well inside the clipped line
  auto [ilo, ihi] = interior_range(L);
  REQUIRE(ihi > ilo);
  double scale = f.lambda1 * std::cbrt(2.0);
  std::vector<std::pair<double, double>> intervals = {
      {(ilo + 0.5) / scale, (ilo + 1.5) / scale}};
  int checked = 0;
  enumerate_tilings(g, [&](const DimerConfig& c) {
    MeasureSample ms = measure_from_config(g, c, f, lines, intervals);  // throws on mismatch
    CHECK(ms.quanta[0][0] % 4 == 0);
    ++checked;
  });
  CHECK(checked == 1024);
}

TEST_CASE("one-point interval still balances its routes") {
  const double a = 0.5;
  ScalingFrame f = ScalingFrame::make(2, a, 1);
  AztecDiamond g(make_params(8, a));
  auto lines = build_lines(f, {0.0});
  auto [ilo, ihi] = interior_range(lines[0]);
  REQUIRE(ihi >= ilo);
  double scale = f.lambda1 * std::cbrt(4.0);
  DimerConfig c = sample_shuffling(g, 1, 0);
  MeasureSample ms =
      measure_from_config(g, c, f, lines, {{(ilo + 0.3) / scale, (ilo + 0.7) / scale}});
  CHECK(ms.quanta[0][0] % 4 == 0);
}

TEST_CASE("finite fredholm determinant") {
  const double a = 0.5;
  ScalingFrame f = ScalingFrame::make(1, a, 1);
  AztecDiamond g(make_params(4, a));
  auto lines = build_lines(f, {0.0});
  auto [ilo, ihi] = interior_range(lines[0]);
  REQUIRE(ihi - ilo >= 2);
  double scale = f.lambda1 * std::cbrt(2.0);
  std::vector<std::pair<double, double>> intervals = {
      {(ilo + 0.5) / scale, (ilo + 2.5) / scale}};

  SUBCASE("zero weights give exactly one") {
    std::vector<std::vector<cplx>> W{{cplx(0.0, 0.0)}};
    cplx det = finite_fredholm(g, f, lines, intervals, W);
    CHECK(std::abs(det - 1.0) <= 1e-14);
  }
  SUBCASE("matches enumeration and the conjugated route") {
    std::vector<std::vector<cplx>> W{{cplx(0.3, 0.0)}};
    cplx det = finite_fredholm(g, f, lines, intervals, W);
    cplx detc = finite_fredholm_conjugated(g, f, lines, intervals, W);
    double zsum = 0.0;
    cplx acc = 0.0;
    enumerate_tilings(g, [&](const DimerConfig& c) {
      double wgt = config_weight(g, c);
      MeasureSample ms = measure_from_config(g, c, f, lines, intervals);
      zsum += wgt;
      acc += wgt * std::exp(cplx(0.3, 0.0) * ms.mu[0][0]);
    });
    acc /= zsum;
    CHECK(std::abs(det - acc) <= 1e-9);
    CHECK(std::abs(det - detc) <= 1e-10);
  }
}

TEST_CASE("mc laplace at order 4 brackets the exact expectation") {
  const double a = 0.5;
  ScalingFrame f = ScalingFrame::make(1, a, 1);
  AztecDiamond g(make_params(4, a));
  auto lines = build_lines(f, {0.0});
  auto [ilo, ihi] = interior_range(lines[0]);
  double scale = f.lambda1 * std::cbrt(2.0);
  std::vector<std::pair<double, double>> intervals = {
      {(ilo + 0.5) / scale, (ilo + 2.5) / scale}};
  std::vector<std::vector<cplx>> Wc{{cplx(0.4, 0.0)}};
  cplx det = finite_fredholm(g, f, lines, intervals, Wc);
  McLaplace mc = mc_laplace(f, {0.0}, intervals, {{0.4}}, 4000, 90210, 1);
  CHECK(std::abs(mc.mean - det.real()) <= 4.0 * mc.stderr_mean);
  CHECK(mc.stderr_mean > 0.0);
  // threading must not change the draw
  McLaplace mc2 = mc_laplace(f, {0.0}, intervals, {{0.4}}, 4000, 90210, 2);
  CHECK(mc2.mean == mc.mean);
  CHECK(mc2.stderr_log == mc.stderr_log);
}

TEST_CASE("conjugated kernel entries are real and decay along a copy") {
  ScalingFrame f = ScalingFrame::make(8, 0.5, 2);
  auto lines = build_lines(f, {0.0});
  const LineSpec& L = lines[0];
  // statement (5) flavor: exponential decay in |t - t'| on one copy
  double prev = 1e9;
  for (int dt : {4, 8, 12, 16}) {
    double v = std::abs(conjugated_gas_kernel(f, L, 0, 0, L, dt, 0));
    CHECK(v < prev);
    prev = v;
  }
}
