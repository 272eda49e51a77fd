#include <doctest.h>

#include <functional>
#include <map>

#include "aztec/determinantal.hpp"
#include "aztec/kasteleyn.hpp"
#include "aztec/rng.hpp"
#include "aztec/shuffle.hpp"

using namespace aztec;

namespace {

// Exact output law of the sampler by enumerating every coin path.
std::map<std::vector<uint8_t>, double> exact_sampler_law(const ShuffleWeights& wts) {
  std::map<std::vector<uint8_t>, double> cur;
  cur[{}] = 1.0;
  for (int k = 0; k < wts.n; ++k) {
    std::map<std::vector<uint8_t>, double> next;
    for (const auto& [dirs, prob] : cur) {
      DimerConfig mk;
      mk.n = k;
      mk.dir = dirs;
      // discover the coin sites of this step
      std::vector<double> site_p;
      shuffle_step_reference(wts, mk, [&](double p) {
        site_p.push_back(p);
        return true;
      });
      const size_t S = site_p.size();
      for (uint64_t bits = 0; bits < (1ull << S); ++bits) {
        size_t idx = 0;
        double pp = prob;
        DimerConfig out = shuffle_step_reference(wts, mk, [&](double p) {
          bool ne = (bits >> idx) & 1;
          pp *= ne ? p : (1.0 - p);
          ++idx;
          return ne;
        });
        next[out.dir] += pp;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

TEST_CASE("cascade basics") {
  SUBCASE("uniform weights give fair coins") {
    ShuffleWeights wts = build_cascade(6, 1.0);
    for (const auto& level : wts.create_prob)
      for (double p : level) CHECK(p == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("weight tables stay two-periodic under renewal") {
    // invariance under the (2,2)/(2,-2) face lattice and at most two
    // distinct cell patterns, checked structurally at every stage
    LevelWeights lw = physical_weights(8, 0.37);
    for (int k = 8; k >= 2; --k) {
      std::map<std::array<double, 4>, int> patterns;
      for (int oy = 1; oy <= 2 * k - 1; oy += 2)
        for (int ox = 1; ox <= 2 * k - 1; ox += 2) {
          patterns[lw.at(ox, oy)]++;
          for (auto [dx, dy] : {std::pair{2, 2}, std::pair{2, -2}}) {
            int x2 = ox + dx, y2 = oy + dy;
            if (x2 >= 1 && x2 <= 2 * k - 1 && y2 >= 1 && y2 <= 2 * k - 1)
              CHECK(lw.at(ox, oy) == lw.at(x2, y2));
          }
        }
      CHECK(patterns.size() <= 2);
      if (k > 1) lw = renew_weights(lw);
    }
  }
}

TEST_CASE("shuffling law is exactly the Boltzmann measure (n <= 3)") {
  for (double a : {0.3, 1.0, 1.7}) {
    for (int n : {2, 3}) {
      ShuffleWeights wts = build_cascade(n, a);
      auto law = exact_sampler_law(wts);
      AztecDiamond g(make_params(n, a));
      double zsum = 0.0;
      std::map<std::vector<uint8_t>, double> boltz;
      enumerate_tilings(g, [&](const DimerConfig& c) {
        double w = config_weight(g, c);
        boltz[c.dir] = w;
        zsum += w;
      });
      REQUIRE(law.size() == boltz.size());
      double tv = 0.0;
      for (auto& [dirs, w] : boltz) {
        REQUIRE(law.count(dirs) == 1);
        tv += std::abs(law[dirs] - w / zsum);
      }
      CHECK(tv / 2.0 <= 1e-12);
    }
  }
}

TEST_CASE("fast shuffle path reproduces the reference step") {
  const int n = 7;
  const double a = 0.6;
  ShuffleWeights wts = build_cascade(n, a);
  for (uint64_t stream = 0; stream < 5; ++stream) {
    DimerConfig fast = sample_shuffling(wts, 11111, stream);
    CounterRng rng(11111, stream);
    DimerConfig ref;
    ref.n = 0;
    for (int k = 0; k < n; ++k)
      ref = shuffle_step_reference(wts, ref, [&](double p) { return rng.next_double() < p; });
    CHECK(fast == ref);
  }
}

TEST_CASE("seed determinism, per-step validity") {
  ShuffleWeights wts = build_cascade(9, 0.5);
  DimerConfig c1 = sample_shuffling(wts, 313, 7);
  DimerConfig c2 = sample_shuffling(wts, 313, 7);
  CHECK(c1 == c2);
  DimerConfig c3 = sample_shuffling(wts, 313, 8);
  CHECK(!(c1 == c3));

  auto holder = std::make_shared<ShuffleWeights>(wts);
  ShuffleState st(holder, 313, 7);
  while (st.order() < 9) {
    st.step();
    AztecDiamond g(make_params(st.order(), 0.5));
    CHECK_NOTHROW(validate_config(g, st.config()));
  }
  CHECK(st.config() == c1);
}

TEST_CASE("exact determinantal sampler") {
  SUBCASE("order 1 is a fair coin") {
    AztecDiamond g(make_params(1, 1.0));
    long first = 0;
    const long N = 10000;
    for (long s = 0; s < N; ++s) {
      DimerConfig c = sample_exact_determinantal(g, 5, uint64_t(s));
      if (c.dir[0] == c.dir[1]) throw std::logic_error("impossible matching");
      if (c.covered(g, {0, 1}, {1, 0})) ++first;
    }
    double p = double(first) / N;
    CHECK(std::abs(p - 0.5) <= 4.0 * std::sqrt(0.25 / N));
  }

  SUBCASE("n=4 law close to enumeration (smoke; acceptance runs 1e6)") {
    const double a = 0.5;
    AztecDiamond g(make_params(4, a));
    KernelMatrix K = build_K(g);
    KernelMatrix Kinv = invert_K(g, K);
    auto tilings = all_tilings(g);
    std::map<std::vector<uint8_t>, size_t> idx;
    std::vector<double> pex(tilings.size());
    double z = 0.0;
    for (size_t i = 0; i < tilings.size(); ++i) {
      idx[tilings[i].dir] = i;
      pex[i] = config_weight(g, tilings[i]);
      z += pex[i];
    }
    const long N = 100000;
    std::vector<long> cnt(tilings.size(), 0);
    for (long s = 0; s < N; ++s)
      ++cnt[idx.at(sample_exact_determinantal(g, K, Kinv, 2024, uint64_t(s)).dir)];
    double tv = 0.0;
    for (size_t i = 0; i < tilings.size(); ++i)
      tv += std::abs(double(cnt[i]) / N - pex[i] / z);
    CHECK(tv / 2.0 <= 0.05);
  }

  SUBCASE("agrees with shuffling on n=8 edge marginals") {
    const double a = 0.5;
    const int n = 8;
    AztecDiamond g(make_params(n, a));
    KernelMatrix K = build_K(g);
    KernelMatrix Kinv = invert_K(g, K);
    ShuffleWeights wts = build_cascade(n, a);
    const long N = 20000;
    std::vector<long> hits_d(g.num_blacks() * 4, 0), hits_s(g.num_blacks() * 4, 0);
    for (long s = 0; s < N; ++s) {
      DimerConfig cd = sample_exact_determinantal(g, K, Kinv, 555, uint64_t(s));
      DimerConfig cs = sample_shuffling(wts, 777, uint64_t(s));
      for (int bi = 0; bi < g.num_blacks(); ++bi) {
        ++hits_d[bi * 4 + cd.dir[bi]];
        ++hits_s[bi * 4 + cs.dir[bi]];
      }
    }
    double worst = 0.0;
    for (size_t e = 0; e < hits_d.size(); ++e) {
      double pd = double(hits_d[e]) / N, ps = double(hits_s[e]) / N;
      double sigma = std::sqrt((pd * (1 - pd) + ps * (1 - ps)) / N + 1e-12);
      worst = std::max(worst, std::abs(pd - ps) / sigma);
    }
    CHECK(worst <= 4.5);
  }
}
