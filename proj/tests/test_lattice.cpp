#include <doctest.h>

#include <set>
#include <sstream>

#include "aztec/io.hpp"
#include "aztec/kasteleyn.hpp"
#include "aztec/lattice.hpp"
#include "aztec/rng.hpp"

using namespace aztec;

TEST_CASE("model parameters and derived constants") {
  ModelParams p = make_params(4, 0.5);
  CHECK(p.c() == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(p.xi() == doctest::Approx(-0.22360679774997897).epsilon(1e-14));
  CHECK(p.c0() == doctest::Approx(0.302853432138689943).epsilon(1e-13));
  CHECK(p.lambda1() == doctest::Approx(0.738333378528725259).epsilon(1e-13));
  CHECK(p.lambda2() == doctest::Approx(1.218961550666214413).epsilon(1e-13));
  CHECK(p.curlyC() == doctest::Approx(0.618033988749894848).epsilon(1e-13));
  // lambda1 c0 = sqrt(1-2c)/2 is used all over the conjugations
  CHECK(p.lambda1() * p.c0() ==
        doctest::Approx(std::sqrt(1.0 - 2.0 * p.c()) / 2.0).epsilon(1e-14));

  CHECK_THROWS_AS(make_params(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_params(4, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(4, 0.0), std::invalid_argument);
  // a = 1 is allowed for the finite machinery but has no gas constants
  ModelParams crit = make_params(4, 1.0);
  CHECK(crit.c() == doctest::Approx(0.5));
  CHECK_THROWS_AS(crit.c0(), std::domain_error);
  CHECK_THROWS_AS(crit.lambda1(), std::domain_error);
  CHECK_THROWS_AS(crit.lambda2(), std::domain_error);
}

TEST_CASE("vertex partition and edge weights") {
  AztecDiamond g(make_params(4, 0.5));
  CHECK(g.num_whites() == 20);
  CHECK(g.num_blacks() == 20);
  int w0 = 0, w1 = 0;
  for (int i = 0; i < g.num_whites(); ++i) {
    Vec2i w = g.white_at(i);
    CHECK(g.white_index(w) == i);
    (AztecDiamond::eps(w) == 0 ? w0 : w1)++;
  }
  CHECK(w0 + w1 == g.num_whites());
  // every edge weight is a function of the incident odd face class only
  for (int bi = 0; bi < g.num_blacks(); ++bi) {
    Vec2i b = g.black_at(bi), nb[4];
    int deg = g.neighbors(b, nb);
    for (int t = 0; t < deg; ++t) {
      Vec2i f = AztecDiamond::odd_face(b, nb[t]);
      CHECK(((f.x & 1) == 1));
      CHECK(((f.y & 1) == 1));
      CHECK(g.edge_weight(b, nb[t]) == (AztecDiamond::a_face(f) ? 0.5 : 1.0));
    }
  }
  // all four edges of an a-face carry weight a
  Vec2i f{1, 1};
  REQUIRE(AztecDiamond::a_face(f));
  CHECK(g.edge_weight({2, 1}, {1, 0}) == 0.5);
  CHECK(g.edge_weight({2, 1}, {1, 2}) == 0.5);
  CHECK(g.edge_weight({0, 1}, {1, 0}) == 0.5);
  CHECK(g.edge_weight({0, 1}, {1, 2}) == 0.5);
}

TEST_CASE("height field basics") {
  AztecDiamond g(make_params(4, 1.0));
  auto tilings = all_tilings(g);
  REQUIRE(tilings.size() == 1024);

  HeightField h0 = height_field(g, tilings[0]);
  CHECK(h0.at(0, 0) == 0);

  // border profile is deterministic and matches the local growth rule
  for (size_t i = 1; i < tilings.size(); i += 97) {
    HeightField h = height_field(g, tilings[i]);
    for (int k = 0; k <= 8; k += 2) {
      CHECK(h.at(k, 0) == k);
      CHECK(h.at(0, k) == k);
      CHECK(h.at(8, k) == 8 - k);
      CHECK(h.at(k, 8) == 8 - k);
    }
  }

  // rebuilding along row-major and column-major face sweeps agrees with BFS
  const DimerConfig& cfg = tilings[123];
  HeightField h = height_field(g, cfg);
  int n = 4;
  for (int j = 0; j <= 2 * n; ++j)
    for (int i = (j % 2); i <= 2 * n; i += 2) {
      if (i + 1 <= 2 * n && j + 1 <= 2 * n)
        CHECK(h.at(i + 1, j + 1) - h.at(i, j) == height_step(g, cfg, {i, j}, {1, 1}));
      if (i - 1 >= 0 && j + 1 <= 2 * n)
        CHECK(h.at(i - 1, j + 1) - h.at(i, j) == height_step(g, cfg, {i, j}, {-1, 1}));
    }
}

TEST_CASE("single flip moves one face height by 4") {
  AztecDiamond g(make_params(1, 1.0));
  auto tilings = all_tilings(g);
  REQUIRE(tilings.size() == 2);
  HeightField ha = height_field(g, tilings[0]);
  HeightField hb = height_field(g, tilings[1]);
  int changed = 0;
  for (int j = 0; j <= 2; ++j)
    for (int i = (j % 2); i <= 2; i += 2)
      if (ha.at(i, j) != hb.at(i, j)) {
        ++changed;
        CHECK(std::abs(ha.at(i, j) - hb.at(i, j)) == 4);
        CHECK(i == 1);
        CHECK(j == 1);
      }
  CHECK(changed == 1);
}

TEST_CASE("dimer classes: determinism, parity injectivity, coverage") {
  AztecDiamond g(make_params(4, 0.5));
  CHECK(classify_dimer(g, {2, 1}, {1, 2}) == classify_dimer(g, {2, 1}, {1, 2}));
  // same direction, flipped parity of the black vertex -> different class
  Vec2i b1{2, 1}, b2{4, 1};
  REQUIRE(AztecDiamond::eps(b1) != AztecDiamond::eps(b2));
  CHECK(classify_dimer(g, b1, b1 + kE2) != classify_dimer(g, b2, b2 + kE2));
  CHECK_THROWS_AS(classify_dimer(g, {2, 1}, {5, 2}), std::invalid_argument);

  std::set<int> seen;
  enumerate_tilings(g, [&](const DimerConfig& c) {
    for (int bi = 0; bi < g.num_blacks(); ++bi)
      seen.insert(classify_dimer(g, g.black_at(bi), c.white_of(g, bi)));
  });
  CHECK(seen.size() == 8);
}

TEST_CASE("config serialization round trip") {
  AztecDiamond g(make_params(3, 0.7));
  auto tilings = all_tilings(g);
  CounterRng rng(4242, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const DimerConfig& c = tilings[rng.next_u64() % tilings.size()];
    auto bytes = serialize_config(g, c);
    CHECK(bytes[0] == 'A');
    double a = 0;
    DimerConfig back = parse_config(bytes, &a);
    CHECK(back == c);
    CHECK(a == 0.7);
  }
  auto bytes = serialize_config(g, tilings[0]);
  bytes[1] = 'X';
  CHECK_THROWS_AS(parse_config(bytes), std::invalid_argument);
  bytes = serialize_config(g, tilings[0]);
  bytes.pop_back();
  CHECK_THROWS_AS(parse_config(bytes), std::invalid_argument);
}

TEST_CASE("render smoke: ppm header and svg payload") {
  AztecDiamond g(make_params(2, 0.5));
  auto tilings = all_tilings(g);
  std::ostringstream ppm;
  render_ppm(ppm, g, tilings[3], default_palette(), 2);
  CHECK(ppm.str().substr(0, 2) == "P6");
  std::ostringstream svg;
  render_svg(svg, g, tilings[3], default_palette());
  CHECK(svg.str().find("<svg") == 0);
  CHECK(svg.str().find("rect") != std::string::npos);
}
