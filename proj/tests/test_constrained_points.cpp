#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lembed/constrained_points.hpp"

using namespace lembed;
using lembed::testing::q;

namespace {

struct Expected {
  const char* x;
  Signature sig;
};

// Frozen from tests/oracles/bfs_oracle.py.
const std::vector<Expected> kExample3P = {{"0", {0, 0}},      {"1/8", {-1, 1}},  {"23/64", {-2, 2}},
                                          {"3/5", {1, 0}},    {"7/10", {0, 1}},  {"71/80", {-1, 2}}};
const std::vector<Expected> kExample3Q = {{"1/25", {1, -2}},   {"1/5", {0, -1}},   {"1/2", {-1, 0}},
                                          {"79/125", {2, -2}}, {"19/25", {1, -1}}, {"1", {0, 0}}};

void check_points(const std::map<Rational, PointRecord>& got, const std::vector<Expected>& want) {
  REQUIRE(got.size() == want.size());
  for (const auto& e : want) {
    auto it = got.find(q(e.x));
    REQUIRE_MESSAGE(it != got.end(), e.x);
    CHECK(it->second.witness.signature == e.sig);
  }
}

void check_replay(const StepGraphon& g, const ConstrainedSets& s) {
  for (auto seed : {Seed::Zero, Seed::One}) {
    const Rational origin = seed == Seed::Zero ? Rational(0) : Rational(1);
    for (const auto& [x, rec] : s.points(seed)) {
      CHECK(replay(g, rec.witness, origin) == x);
      CHECK(static_cast<int>(rec.witness.steps.size()) == rec.depth);
      Signature sig(s.boundary_count, 0);
      for (const auto& st : rec.witness.steps) sig[static_cast<std::size_t>(st.index - 1)] += st.sign();
      CHECK(sig == rec.witness.signature);
    }
  }
  for (const auto& c : s.coincidences) {
    const Rational origin = c.set == Seed::Zero ? Rational(0) : Rational(1);
    CHECK(replay(g, c.canonical, origin) == c.point);
    CHECK(replay(g, c.other, origin) == c.point);
    CHECK(c.canonical.signature != c.other.signature);
  }
}

}  // namespace

TEST_CASE("step names") {
  CHECK(Step{StepKind::Upper, 2}.name() == "R2");
  CHECK(Step::parse("L1") == Step{StepKind::Lower, 1});
  CHECK(Step::parse("R2").inverse() == Step::parse("L2"));
  CHECK_THROWS_AS(Step::parse("X1"), std::invalid_argument);
  auto steps = all_steps(2);
  REQUIRE(steps.size() == 4);
  CHECK(steps[0].name() == "R1");
  CHECK(steps[1].name() == "R2");
  CHECK(steps[2].name() == "L1");
  CHECK(steps[3].name() == "L2");
}

TEST_CASE("apply_step works on closed domains") {
  auto g = testing::example1();
  CHECK(apply_step(g, Step::parse("R1"), q("9/10")) == 1);
  CHECK_FALSE(apply_step(g, Step::parse("R1"), q("91/100")).has_value());
  CHECK(apply_step(g, Step::parse("L2"), q("1/8")) == 0);
  CHECK_FALSE(apply_step(g, Step::parse("L2"), q("1/10")).has_value());
}

TEST_CASE("example 3 generation matches the oracle") {
  auto g = testing::example3();
  auto s = generate(g, 8);
  check_points(s.p_points, kExample3P);
  check_points(s.q_points, kExample3Q);
  CHECK(s.coincidences.empty());
  CHECK(s.complete);
  CHECK(s.relation == SetRelation::DisjointSoFar);
  CHECK_FALSE(s.exception_flag);
  CHECK(s.boundary_starts == testing::qs({"3/5", "7/10"}));
  CHECK(s.p_points.at(q("23/64")).witness.steps ==
        std::vector<Step>{Step::parse("L1"), Step::parse("R2"), Step::parse("L1"), Step::parse("R2")});
  check_replay(g, s);
}

TEST_CASE("example 3 at depth 1 is truncated") {
  auto s = generate(testing::example3(), 1);
  CHECK_FALSE(s.complete);
  CHECK(s.p_points.size() == 3);
  CHECK(s.q_points.size() == 3);
  CHECK(s.relation == SetRelation::DisjointSoFar);
}

TEST_CASE("example 1 becomes identical early") {
  auto g = testing::example1();
  struct Count {
    int depth;
    std::size_t p, q;
  };
  for (auto c : {Count{8, 72, 137}, Count{9, 94, 183}, Count{10, 120, 246}}) {
    auto s = generate(g, c.depth);
    CAPTURE(c.depth);
    CHECK(s.p_points.size() == c.p);
    CHECK(s.q_points.size() == c.q);
    CHECK(s.relation == SetRelation::Identical);
    CHECK_FALSE(s.exception_flag);
    CHECK_FALSE(s.complete);
    check_replay(g, s);
  }
  auto s7 = generate(g, 7);
  CHECK(s7.relation == SetRelation::DisjointSoFar);
  auto s8 = generate(g, 8);
  const auto& one = s8.p_points.at(Rational(1));
  CHECK(one.depth == 8);
  CHECK(one.witness.signature == Signature{6, 0});
  // r_1 applied repeatedly to 0 gives i/10.
  auto s10 = generate(g, 10);
  for (int i = 0; i <= 9; ++i) CHECK(s10.p_points.count(Rational(i, 10)));
  for (const char* x : {"1/8", "3/8", "7/8"}) CHECK(s10.p_points.count(q(x)));
}

TEST_CASE("exception flag") {
  // P = Q with r_1(0) > l_2(1) and r_2(0) > l_1(1).
  auto g = parse_spec("values = 1, 1/2, 0\nboundary 1 = (0, 1/2), (1/2, 1)\nboundary 2 = (0, 3/5), (2/5, 1)\n");
  auto s = generate(g, 6);
  CHECK(s.relation == SetRelation::Identical);
  CHECK(s.exception_flag);
  auto t = generate(load_spec(testing::fixture("two_valued.graphon")), 16);
  CHECK(t.relation == SetRelation::DisjointSoFar);
  CHECK_FALSE(t.exception_flag);
}

TEST_CASE("negative depth is rejected") {
  CHECK_THROWS_AS(generate(testing::example3(), -1), std::invalid_argument);
  auto s = generate(testing::example3(), 0);
  CHECK(s.p_points.size() == 1);
  CHECK(s.q_points.size() == 1);
}

TEST_CASE("composed maps agree with replay") {
  auto g = testing::example3();
  auto maps = restricted_maps(g);
  auto s = generate(g, 8);
  for (const auto& [x, rec] : s.p_points) {
    if (rec.witness.steps.empty()) continue;
    auto f = composed_map(maps, rec.witness);
    if (f) CHECK((*f)(Rational(0)) == x);
  }
}

TEST_CASE("generation is monotone in depth on random graphons") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto g = testing::random_two_valued(rng, q("1/20"));
    ConstrainedSets prev = generate(g, 0);
    for (int d = 1; d <= 8; ++d) {
      auto cur = generate(g, d);
      for (const auto& [x, rec] : prev.p_points) {
        REQUIRE(cur.p_points.count(x));
        CHECK(cur.p_points.at(x).witness.signature == rec.witness.signature);
      }
      for (const auto& [x, rec] : prev.q_points) REQUIRE(cur.q_points.count(x));
      check_replay(g, cur);
      prev = std::move(cur);
    }
  }
}
