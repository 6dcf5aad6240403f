#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lembed/piecewise_linear.hpp"

using namespace lembed;
using lembed::testing::q;

namespace {

PiecewiseLinearMap random_map(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_int_distribution<long> step(1, 9);
  const int pieces = count(rng);
  std::vector<Rational> xs{Rational(0)}, ys{Rational(0)};
  for (int k = 0; k < pieces; ++k) {
    xs.push_back(xs.back() + Rational(step(rng)));
    ys.push_back(ys.back() + Rational(step(rng), step(rng)));
  }
  // Affinely rescale the domain onto [lo, hi].
  std::vector<Breakpoint> bps;
  for (std::size_t k = 0; k < xs.size(); ++k) bps.push_back({lo + (hi - lo) * xs[k] / xs.back(), ys[k]});
  return PiecewiseLinearMap(bps);
}

}  // namespace

TEST_CASE("evaluation and preimages") {
  PiecewiseLinearMap f({{q("0"), q("6/10")}, {q("1/2"), q("1")}});
  CHECK(f(q("0")) == q("3/5"));
  CHECK(f(q("1/8")) == q("7/10"));
  CHECK(f(q("1/2")) == 1);
  CHECK(f.preimage(q("7/10")) == q("1/8"));
  CHECK(eval(f, q("1/4")) == q("4/5"));
  CHECK_THROWS_AS(f(q("3/4")), DomainError);
  CHECK_THROWS_AS(f.preimage(q("1/2")), DomainError);
  try {
    f(q("3/4"));
  } catch (const DomainError& e) {
    CHECK(e.offending() == q("3/4"));
    CHECK(e.domain_max() == q("1/2"));
  }
}

TEST_CASE("construction rejects non-increasing data and drops collinear points") {
  CHECK_THROWS_AS(PiecewiseLinearMap({{q("0"), q("0")}}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinearMap({{q("0"), q("0")}, {q("0"), q("1")}}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinearMap({{q("0"), q("1")}, {q("1"), q("1")}}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinearMap({{q("0"), q("1")}, {q("1"), q("0")}}), std::invalid_argument);
  PiecewiseLinearMap f({{q("0"), q("0")}, {q("1/2"), q("1")}, {q("1"), q("2")}});
  CHECK(f.breakpoints().size() == 2);
  CHECK(f == PiecewiseLinearMap::segment(0, 0, 1, 2));
}

TEST_CASE("inversion of a boundary") {
  PiecewiseLinearMap r({{q("0"), q("7/10")}, {q("1/5"), q("1")}});
  auto l = invert(r);
  CHECK(l.domain_min() == q("7/10"));
  CHECK(l.domain_max() == 1);
  CHECK(l(q("1")) == q("1/5"));
  CHECK(l(q("19/25")) == q("1/25"));
}

TEST_CASE("composition is restricted to the usable domain") {
  PiecewiseLinearMap r1({{q("0"), q("6/10")}, {q("1/2"), q("1")}});
  PiecewiseLinearMap r2({{q("0"), q("7/10")}, {q("1/5"), q("1")}});
  auto l1 = invert(r1);
  auto c = compose(l1, r2);
  REQUIRE(c);
  CHECK(c->domain_min() == 0);
  CHECK(c->domain_max() == q("1/5"));
  CHECK((*c)(q("0")) == q("1/8"));
  // r2 o r1 needs r1(x) <= 1/5, impossible.
  CHECK_FALSE(compose(r2, r1).has_value());
  // Touching at one point is degenerate.
  PiecewiseLinearMap a({{q("0"), q("1")}, {q("1"), q("2")}});
  PiecewiseLinearMap b({{q("2"), q("5")}, {q("3"), q("6")}});
  CHECK_FALSE(compose(b, a).has_value());
}

TEST_CASE("restrict and shift") {
  auto f = PiecewiseLinearMap::segment(0, 0, 2, 1);
  auto g = restrict(f, q("1/2"), q("1"));
  CHECK(g.domain_min() == q("1/2"));
  CHECK(g(q("1")) == q("1/2"));
  CHECK_THROWS_AS(restrict(f, q("-1"), q("1")), DomainError);
  CHECK_THROWS_AS(restrict(f, q("1"), q("1")), std::invalid_argument);
  CHECK(f.shifted(q("3/2"))(q("2")) == q("5/2"));
  CHECK(to_string(f) == "(0,0), (2,1)");
}

TEST_CASE("inverse and composition laws on random maps") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto f = random_map(rng, q("0"), q("1"));
    auto g = random_map(rng, f.range_min(), f.range_max());
    auto h = random_map(rng, g.range_min(), g.range_max());
    CHECK(invert(invert(f)) == f);
    CHECK(compose(invert(f), f).value() == PiecewiseLinearMap::identity(f.domain_min(), f.domain_max()));
    CHECK(compose(f, invert(f)).value() == PiecewiseLinearMap::identity(f.range_min(), f.range_max()));
    auto gf = compose(g, f).value();
    CHECK(compose(h, gf).value() == compose(compose(h, g).value(), f).value());
    CHECK(invert(gf) == compose(invert(f), invert(g)).value());
    for (const auto& b : f.breakpoints()) CHECK(gf(b.x) == g(f(b.x)));
    // strictly increasing everywhere
    for (std::size_t k = 1; k < gf.breakpoints().size(); ++k)
      CHECK(gf.breakpoints()[k - 1].y < gf.breakpoints()[k].y);
  }
}
