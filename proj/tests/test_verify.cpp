#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lembed/pipeline.hpp"
#include "lembed/verify.hpp"

using namespace lembed;
using lembed::testing::q;

namespace {

Embedding example3_embedding() { return *run_pipeline(testing::example3(), 8).embedding; }

Embedding with_thresholds(const Embedding& e, std::vector<Rational> d) {
  return make_embedding(std::move(d), e.breakpoints, e.provenance);
}

// Pair-by-pair reference.
VerificationReport naive(const StepGraphon& g, const Embedding& e, long M) {
  VerificationReport rep;
  rep.grid_resolution = M;
  for (long j = 0; j < M; ++j)
    for (long k = j + 1; k < M; ++k) {
      ++rep.pairs_checked;
      Rational x(j, M), y(k, M);
      auto wl = level_at(g, x, y);
      auto pl = pi_level(e, x, y);
      if (wl != pl) {
        ++rep.mismatch_count;
        if (rep.mismatches.size() < 20) rep.mismatches.push_back({x, y, wl, pl});
      }
    }
  return rep;
}

void same(const VerificationReport& a, const VerificationReport& b) {
  CHECK(a.pairs_checked == b.pairs_checked);
  CHECK(a.mismatch_count == b.mismatch_count);
  REQUIRE(a.mismatches.size() == b.mismatches.size());
  for (std::size_t i = 0; i < a.mismatches.size(); ++i) {
    CHECK(a.mismatches[i].x == b.mismatches[i].x);
    CHECK(a.mismatches[i].y == b.mismatches[i].y);
    CHECK(a.mismatches[i].w_level == b.mismatches[i].w_level);
    CHECK(a.mismatches[i].pi_level == b.mismatches[i].pi_level);
  }
}

}  // namespace

TEST_CASE("example 3 embedding verifies exactly") {
  auto g = testing::example3();
  auto e = example3_embedding();
  for (long M : {50L, 200L, 500L}) {
    auto rep = verify_grid(g, e, M);
    CAPTURE(M);
    CHECK(rep.pairs_checked == static_cast<std::uint64_t>(M * (M - 1) / 2));
    CHECK(rep.mismatch_count == 0);
    CHECK(rep.mismatch_rate == 0);
  }
  CHECK(verify_grid(g, e, 200).pairs_checked == 19900);
}

TEST_CASE("perturbed thresholds are caught") {
  auto g = testing::example3();
  auto bad = with_thresholds(example3_embedding(), testing::qs({"1", "11/8"}));
  auto rep = verify_grid(g, bad, 200);
  CHECK(rep.mismatch_count > 0);
  CHECK(rep.mismatch_rate > 0);
  CHECK(rep.mismatch_rate == Rational(static_cast<long>(rep.mismatch_count), 19900));
  CHECK(pi_level(bad, q("0"), q("7/10")) == 2);
  CHECK(level_at(g, q("0"), q("7/10")) == 2);
  for (const auto& m : rep.mismatches) CHECK(m.w_level != m.pi_level);
  auto capped = verify_grid(g, bad, 200, 3);
  CHECK(capped.mismatches.size() == 3);
  CHECK(capped.mismatch_count == rep.mismatch_count);
}

TEST_CASE("smallest grid checks one pair") {
  auto rep = verify_grid(testing::example3(), example3_embedding(), 2);
  CHECK(rep.pairs_checked == 1);
  CHECK_THROWS_AS(verify_grid(testing::example3(), example3_embedding(), 1), std::invalid_argument);
  auto two = two_valued_pi(load_spec(testing::fixture("two_valued.graphon")));
  CHECK_THROWS_AS(verify_grid(testing::example3(), two, 10), std::invalid_argument);
}

TEST_CASE("row sweep agrees with the pair-by-pair reference") {
  auto g = testing::example3();
  auto e = example3_embedding();
  for (const auto& d : {testing::qs({"1", "5/4"}), testing::qs({"1", "11/8"}), testing::qs({"3/4", "5/4"}),
                        testing::qs({"1/2", "2"})}) {
    auto ed = with_thresholds(e, d);
    for (long M : {2L, 7L, 40L, 81L}) same(verify_grid(g, ed, M), naive(g, ed, M));
  }
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    auto g2 = testing::random_two_valued(rng, q("1/20"));
    std::vector<Breakpoint> bps{{q("0"), q("0")}};
    for (int k = 1; k <= 4; ++k) bps.push_back({Rational(k, 4), bps.back().y + testing::random_fraction(rng, 1, 9, 4)});
    auto e2 = make_embedding({testing::random_fraction(rng, 1, 12, 4)}, bps);
    same(verify_grid(g2, e2, 53), naive(g2, e2, 53));
  }
}

TEST_CASE("pair orientation does not matter") {
  auto g = testing::example3();
  auto bad = with_thresholds(example3_embedding(), testing::qs({"1", "11/8"}));
  for (long j = 0; j < 30; ++j)
    for (long k = 0; k < 30; ++k) {
      Rational x(j, 30), y(k, 30);
      CHECK(pi_level(bad, x, y) == pi_level(bad, y, x));
      CHECK(level_at(g, x, y) == level_at(g, y, x));
    }
}
