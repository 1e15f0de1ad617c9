#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "posetflow/builders.hpp"
#include "posetflow/flow.hpp"
#include "posetflow/json_io.hpp"

using namespace posetflow;

TEST_CASE("poset JSON round trip is canonical") {
  auto ball = hamming_ball({2, 2, 1});
  auto j = poset_to_json(ball);
  auto back = poset_from_json(j);
  CHECK(back.size() == ball.size());
  CHECK(poset_to_json(back) == j);
  CHECK(canonical_dump(j) == canonical_dump(poset_to_json(back)));

  // Elements sorted by id, covers sorted low -> high.
  auto ids = j["elements"];
  for (size_t i = 0; i + 1 < ids.size(); ++i) {
    CHECK(ids[i]["id"].get<std::string>() < ids[i + 1]["id"].get<std::string>());
  }
}

TEST_CASE("weights survive as numbers or decimal strings") {
  BigInt huge("123456789012345678901234567890");
  Poset p({{"a", huge}, {"b", 2}}, {{"a", "b"}});
  auto j = poset_to_json(p);
  CHECK(j["elements"][0]["weight"].is_string());
  CHECK(j["elements"][1]["weight"].is_number_integer());
  auto back = poset_from_json(j);
  CHECK(back.weight(back.require("a")) == huge);
}

TEST_CASE("poset JSON rejects malformed input") {
  CHECK_THROWS_AS(poset_from_json(Json::parse(R"({"covers":[]})")), std::invalid_argument);
  CHECK_THROWS_AS(poset_from_json(Json::parse(R"({"elements":[{"id":"a"}],"covers":[["a"]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      poset_from_json(Json::parse(R"({"elements":[{"id":"a"}],"covers":[["a","z"]]})")),
      std::invalid_argument);
}

TEST_CASE("block grid JSON carries decimal sizes") {
  auto grid = block_grid({3, 3, 2});
  auto j = block_grid_to_json(grid);
  CHECK(j["p"] == 3);
  CHECK(j["rho"] == 2);
  bool found = false;
  for (const auto& b : j["blocks"]) {
    if (b["i"] == 1 && b["j"] == 1) {
      CHECK(b["size"] == "9");
      CHECK(b["rank"] == 2);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("unit flow JSON round trip keeps exact weights") {
  auto b2 = boolean_lattice(2);
  auto flow = build_unit_flow(b2);
  auto j = unit_flow_to_json(flow);
  CHECK(j["chains"][0]["weight"] == "1/2");
  auto back = unit_flow_from_json(j);
  CHECK(verify_unit_flow(b2, back).ok);
  CHECK(unit_flow_to_json(back) == j);

  CHECK_THROWS_AS(unit_flow_from_json(Json::parse(R"({"chains":[{"elements":["a"]}]})")),
                  std::invalid_argument);
}

TEST_CASE("inequality report JSON shape") {
  InequalityReport ok;
  ok.holds = true;
  ok.checked = 7;
  auto j = inequality_report_to_json(ok);
  CHECK(j["holds"] == true);
  CHECK(j["checked"] == 7);
  CHECK(j["violation"].is_null());

  InequalityReport bad;
  bad.holds = false;
  bad.checked = 3;
  bad.violation = InequalityViolation{{1, 0, 2}, Rational(7, 6), Rational(1)};
  auto jb = inequality_report_to_json(bad);
  CHECK(jb["violation"]["indices"] == Json::array({1, 0, 2}));
  CHECK(jb["violation"]["lhs"] == "7/6");
  CHECK(jb["violation"]["rhs"] == "1/1");
}

TEST_CASE("certificates serialize with scale and witnesses") {
  auto bad = posetflow::testing::violation_poset();
  auto cert = max_weight_antichain(bad, lym_weights(bad));
  auto j = antichain_certificate_to_json(bad, cert);
  CHECK(j["value"] == "7/6");
  CHECK(j["scale"] == "6");
  CHECK(j["antichain"] == Json::array({"b", "c", "y"}));

  auto lym = lym_certify(bad);
  auto jl = lym_certificate_to_json(bad, lym);
  CHECK(jl["lym"] == false);
  CHECK(jl["failure"]["layer"] == 0);
  CHECK(jl["failure"]["witness"] == "b,c");
  CHECK(jl["failure"]["lym_sum"] == "7/6");
}
