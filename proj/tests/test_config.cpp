#include <doctest.h>

#include "aztec/config.hpp"

using namespace aztec;

TEST_CASE("strict key validation") {
  json j = {{"n", 8}, {"a", 0.5}, {"seed", 1}};
  CHECK_NOTHROW(require_keys(j, {"n", "a", "seed", "count"}, {"seed"}, "sample"));
  json bad = j;
  bad["tpyo"] = 1;
  CHECK_THROWS_WITH_AS(require_keys(bad, {"n", "a", "seed"}, {"seed"}, "sample"),
                       doctest::Contains("unknown key"), std::invalid_argument);
  json missing = {{"n", 8}};
  CHECK_THROWS_WITH_AS(require_keys(missing, {"n", "a", "seed"}, {"seed"}, "sample"),
                       doctest::Contains("missing key"), std::invalid_argument);
}

TEST_CASE("run config round trip") {
  json j = {{"command", "sample"}, {"n", 8}, {"a", 0.5}, {"seed", 17}};
  RunConfig c = RunConfig::from_json(j);
  CHECK(c.command == "sample");
  CHECK(c.body["n"] == 8);
  CHECK(c.to_json() == j);
  CHECK_THROWS_AS(RunConfig::from_json(json{{"n", 8}}), std::invalid_argument);
}

TEST_CASE("full precision formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1.218961550666214413, 6.02e23, -1.7710868074}) {
    CHECK(std::stod(format_full(v)) == v);
  }
}
