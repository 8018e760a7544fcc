#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigid/error.hpp"
#include "rigid/json_io.hpp"
#include "support.hpp"

using namespace rigid;
using namespace rigid::testing;
using rigid::json_io::json;

TEST_CASE("subspace file round trip preserves the span") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixSubspace V = random_subspace(rng, 2 + trial % 3, 1 + trial % 4, 1 + trial % 3);
    const json j = json::parse(json_io::subspace_to_json(V).dump());
    CHECK(same_subspace(json_io::subspace_from_json(j), V, {.subspace_angle = 1e-12}));
  }
}

TEST_CASE("polynomial JSON round trip is exact") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const PolyMap F = random_polymap(rng, 1 + trial % 3, 1 + trial % 2, 3);
    const PolyMap G = json_io::polymap_from_json(json::parse(json_io::polymap_to_json(F).dump()));
    for (int d = 0; d <= 3; ++d) CHECK((F.component(d).coefficients() - G.component(d).coefficients()).norm() == 0.0);
  }
}

TEST_CASE("polynomial JSON uses 1-based outputs") {
  const json j = json::parse(R"({"n":2,"m":2,"terms":[{"degree":2,"output":2,"exponents":[1,1],"value":3.5}]})");
  const PolyMap F = json_io::polymap_from_json(j);
  CHECK(F.component(2).coeff(1, {1, 1}) == 3.5);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(json_io::parse("{not json"), InvalidArgument);
  CHECK_THROWS_AS(json_io::subspace_from_json(json::parse(R"({"n":2,"generators":[]})")), InvalidArgument);
  CHECK_THROWS_AS(json_io::subspace_from_json(json::parse(R"({"n":2,"m":2,"generators":[[[1,0]]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(json_io::subspace_from_json(json::parse(R"({"n":2,"m":1,"generators":[[[1,"x"]]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(
      json_io::polymap_from_json(json::parse(R"({"n":2,"m":1,"terms":[{"degree":2,"output":0,"exponents":[1,1],"value":1}]})")),
      InvalidArgument);
  CHECK_THROWS_AS(
      json_io::polymap_from_json(json::parse(R"({"n":2,"m":1,"terms":[{"degree":3,"output":1,"exponents":[1,1],"value":1}]})")),
      InvalidArgument);
  CHECK_THROWS_AS(json_io::tolerances_from_json(json::parse(R"({"bogus":1})")), InvalidArgument);
  CHECK_THROWS_AS(json_io::tolerances_from_json(json::parse(R"({"certificate":-1})")), InvalidArgument);
}

TEST_CASE("chain report JSON") {
  const json j = json_io::chain_to_json(chain(conformal_space(3)));
  CHECK(j["alpha"] == json::array({3, 4, 3, 0}));
  CHECK(j["delta"]["status"] == "finite");
  CHECK(j["delta"]["value"] == 2);
  CHECK(j["alpha_total"] == 10);
  CHECK(j["bases"].size() == 4);
  CHECK(j["bases"][2]["elements"].size() == 3);

  const json lb = json_io::chain_to_json(chain(w_space(2, 2), 3), false);
  CHECK(lb["delta"]["status"] == "lower_bound");
  CHECK(lb["alpha_total_exact"] == false);
  CHECK_FALSE(lb.contains("bases"));
}

TEST_CASE("augmented subspace JSON") {
  const json j = json::parse(R"({"n":1,"m":1,"generators":[{"matrix":[[1]],"vector":[2]}]})");
  const AugmentedSubspace V = json_io::augmented_from_json(j);
  CHECK(V.dim() == 1);
  CHECK_FALSE(augmented_jet_space(V, Matrix::Constant(1, 1, 1.0), 6).consistent);
}
