#include <doctest.h>

#include "helpers.hpp"
#include "lembed/pipeline.hpp"
#include "lembed/report.hpp"

using namespace lembed;
using lembed::testing::q;
using report::json;

TEST_CASE("rationals serialize in lowest terms") {
  CHECK(report::to_json(q("6/10")) == json("3/5"));
  CHECK(report::to_json(q("4/2")) == json("2"));
  CHECK(report::rational_from_json(json("38/50")) == q("19/25"));
  CHECK(report::rational_from_json(json(3)) == 3);
  CHECK_THROWS_AS(report::rational_from_json(json(0.5)), std::invalid_argument);
}

TEST_CASE("embedding JSON round-trips") {
  auto e = *run_pipeline(testing::example3(), 8).embedding;
  auto j = report::to_json(e);
  CHECK(j["pi1"] == "13/8");
  CHECK(j["thresholds"] == json::array({"1", "5/4"}));
  CHECK(j["breakpoints"][2] == json::array({"1/8", "1/4"}));
  auto back = report::embedding_from_json(json::parse(j.dump()));
  CHECK(back.breakpoints == e.breakpoints);
  CHECK(back.thresholds == e.thresholds);
  CHECK(back.provenance == e.provenance);
  CHECK(back.pi == e.pi);
}

TEST_CASE("malformed embeddings are rejected") {
  CHECK_THROWS_AS(report::embedding_from_json(json::parse(R"({"thresholds": ["1"]})")), std::invalid_argument);
  CHECK_THROWS_AS(report::embedding_from_json(json::parse(R"({"thresholds": ["1"], "breakpoints": [["0","0"],["1","0"]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(report::embedding_from_json(json::parse(R"({"thresholds": ["1"], "breakpoints": [["0","0","1"]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      report::embedding_from_json(json::parse(R"({"thresholds": ["1"], "pi1": "3", "breakpoints": [["0","0"],["1","2"]]})")),
      std::invalid_argument);
}

TEST_CASE("constrained sets serialize witnesses outermost first") {
  auto s = generate(testing::example3(), 8);
  auto j = report::to_json(s);
  CHECK(j["P"].size() == 6);
  CHECK(j["Q"].size() == 6);
  CHECK(j["relation"] == "DISJOINT_SO_FAR");
  bool found = false;
  for (const auto& p : j["P"])
    if (p["x"] == "23/64") {
      found = true;
      CHECK(p["witness"] == json::array({"L1", "R2", "L1", "R2"}));
      CHECK(p["signature"] == json::array({-2, 2}));
    }
  CHECK(found);
}

TEST_CASE("constraints and outcomes serialize") {
  auto dec = decide(generate(testing::example1(), 8));
  auto j = report::to_json(dec.outcome);
  CHECK(j["status"] == "INFEASIBLE");
  REQUIRE(j.contains("certificate"));
  CHECK(j["certificate"][0].contains("multiplier"));
  auto c = report::to_json(dec.system.necessary.front());
  CHECK(c["origin"] == "BASE_ORDER");
  CHECK(c["relation"] == "<");
  CHECK(report::format(dec.system.necessary.front()) == "-d1 < 0");
  Constraint k{{{2, -1}, 1, q("-1/2")}, Cmp::Le, Origin::CrossPQ, {}};
  CHECK(report::format(k) == "2 d1 - d2 + a - 1/2 <= 0");
}

TEST_CASE("sha-256") {
  CHECK(report::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(report::sha256_hex("").size() == 64);
}
