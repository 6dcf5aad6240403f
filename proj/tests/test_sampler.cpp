#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "lembed/pipeline.hpp"
#include "lembed/sampler.hpp"

using namespace lembed;
using lembed::testing::q;

namespace {

Embedding example3_embedding() { return *run_pipeline(testing::example3(), 8).embedding; }

// Exact integral of w over the unit square.
Rational exact_edge_density(const StepGraphon& g) {
  Rational total = g.value(g.levels());
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) {
    const auto& r = g.boundary(i);
    Rational integral;
    const auto& b = r.breakpoints();
    for (std::size_t k = 0; k + 1 < b.size(); ++k) integral += (b[k + 1].x - b[k].x) * (b[k].y + b[k + 1].y) / 2;
    integral += 1 - r.domain_max();
    const Rational band = 2 * (integral - Rational(1, 2));
    total += (g.value(i) - g.value(i + 1)) * band;
  }
  return total;
}

double mean_degree_variance(const StepGraphon& g) {
  const int K = 20000;
  double s = 0, s2 = 0;
  for (int k = 0; k < K; ++k) {
    const Rational x(2 * k + 1, 2 * K);
    double wbar = g.value(g.levels()).to_double();
    for (std::size_t i = 1; i <= g.boundary_count(); ++i)
      wbar += (g.value(i) - g.value(i + 1)).to_double() * (g.upper_at(i, x) - g.lower_at(i, x)).to_double();
    s += wbar;
    s2 += wbar * wbar;
  }
  return s2 / K - (s / K) * (s / K);
}

SampledGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  SampledGraph g;
  g.n = n;
  g.words = (n + 63) / 64;
  g.adjacency.assign(n * g.words, 0);
  for (auto [i, j] : edges) {
    g.adjacency[i * g.words + j / 64] |= std::uint64_t{1} << (j % 64);
    g.adjacency[j * g.words + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return g;
}

}  // namespace

TEST_CASE("single vertex gives an empty graph") {
  auto g = testing::example3();
  auto a = sample_w_graph(g, 1, 5);
  CHECK(a.n == 1);
  CHECK(a.edge_count() == 0);
  auto b = sample_geometric(g, example3_embedding(), 1, 5);
  CHECK(b.edge_count() == 0);
  CHECK_THROWS_AS(sample_w_graph(g, 0, 5), std::invalid_argument);
}

TEST_CASE("sampling is deterministic, symmetric and loop-free") {
  auto g = testing::example3();
  auto a = sample_w_graph(g, 300, 99);
  auto b = sample_w_graph(g, 300, 99);
  CHECK(a == b);
  CHECK(a.labels == sample_labels(300, 99));
  auto c = sample_w_graph(g, 300, 100);
  CHECK_FALSE(a == c);
  for (std::size_t i = 0; i < a.n; ++i) {
    CHECK_FALSE(a.edge(i, i));
    for (std::size_t j = 0; j < i; ++j) CHECK(a.edge(i, j) == a.edge(j, i));
  }
}

TEST_CASE("labels are a prefix-stable stream") {
  auto a = sample_labels(10, 3);
  auto b = sample_labels(20, 3);
  CHECK(std::equal(a.begin(), a.end(), b.begin()));
}

TEST_CASE("edges follow the graphon level of each pair") {
  auto g = testing::example3();
  auto s = sample_w_graph(g, 200, 8);
  // alpha_1 = 1 and alpha_3 = 0 make those pairs deterministic.
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j) {
      auto lv = level_at(g, Rational::from_double(s.labels[i]), Rational::from_double(s.labels[j]));
      if (lv == 1) CHECK(s.edge(i, j));
      if (lv == 3) CHECK_FALSE(s.edge(i, j));
    }
}

TEST_CASE("constant graphon density") {
  StepGraphon g({Rational(3, 10)}, {});
  const std::size_t n = 2000;
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) sum += graph_stats(sample_w_graph(g, n, seed)).edge_density;
  const double mean = sum / 10;
  const double pairs = n * (n - 1) / 2.0;
  const double se = std::sqrt(0.3 * 0.7 / pairs / 10);
  CHECK(std::abs(mean - 0.3) < 3 * se);
}

TEST_CASE("example 3 edge density matches the exact integral") {
  auto g = testing::example3();
  const Rational exact = exact_edge_density(g);
  CHECK(exact == q("87/100"));
  const std::size_t n = 2000;
  const double p = exact.to_double();
  const double pairs = n * (n - 1) / 2.0;
  const double se = std::sqrt((p * (1 - p) + 2.0 * (n - 2) * mean_degree_variance(g)) / pairs);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto stats = graph_stats(sample_w_graph(g, n, seed));
    CAPTURE(seed);
    CHECK(std::abs(stats.edge_density - p) < 3 * se);
  }
}

TEST_CASE("example 3 triangle density matches a grid estimate") {
  auto g = testing::example3();
  const int M = 200;
  std::vector<double> w(M * M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      w[i * M + j] = g.value(level_at(g, Rational(2 * i + 1, 2 * M), Rational(2 * j + 1, 2 * M))).to_double();
  std::vector<double> t1(M, 0.0);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      if (w[i * M + j] == 0) continue;
      double inner = 0;
      for (int k = 0; k < M; ++k) inner += w[j * M + k] * w[i * M + k];
      t1[i] += w[i * M + j] * inner;
    }
  double t = 0, t2 = 0;
  for (double v : t1) {
    t += v / (double(M) * M);
    t2 += (v / (double(M) * M)) * (v / (double(M) * M));
  }
  t /= M;
  const double zeta1 = t2 / M - t * t;
  const std::size_t n = 2000;
  const double se = std::sqrt(9 * zeta1 / n);
  auto stats = graph_stats(sample_w_graph(g, n, 7));
  REQUIRE(stats.triangle_density);
  CAPTURE(t);
  CAPTURE(se);
  CHECK(std::abs(*stats.triangle_density - t) < 3 * se);
}

TEST_CASE("geometric sampler reproduces the graphon sampler for an exact embedding") {
  auto g = testing::example3();
  auto e = example3_embedding();
  auto a = sample_w_graph(g, 500, 42);
  auto b = sample_geometric(g, e, 500, 42);
  CHECK(a.labels == b.labels);
  CHECK(a == b);
}

TEST_CASE("perturbed embedding changes some graph") {
  auto g = testing::example3();
  auto e = example3_embedding();
  auto bad = make_embedding(testing::qs({"1", "11/8"}), e.breakpoints, e.provenance);
  bool differ = false;
  for (std::uint64_t seed = 0; seed < 5 && !differ; ++seed)
    differ = !(sample_w_graph(g, 300, seed) == sample_geometric(g, bad, 300, seed));
  CHECK(differ);
}

TEST_CASE("graph statistics") {
  auto k4 = from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto s = graph_stats(k4);
  CHECK(s.edge_density == 1.0);
  REQUIRE(s.triangle_density);
  CHECK(*s.triangle_density == 1.0);
  CHECK(s.triangles == 4);
  CHECK(s.degree_histogram == std::vector<std::uint64_t>{0, 0, 0, 4});

  auto empty = graph_stats(from_edges(10, {}));
  CHECK(empty.edge_density == 0.0);
  CHECK(*empty.triangle_density == 0.0);
  CHECK(empty.degree_histogram == std::vector<std::uint64_t>{10});

  auto pair = graph_stats(from_edges(2, {{0, 1}}));
  CHECK(pair.edge_density == 1.0);
  CHECK_FALSE(pair.triangle_density);

  auto path = graph_stats(from_edges(70, {{0, 65}, {65, 69}, {0, 69}, {1, 2}}));
  CHECK(path.triangles == 1);
}

TEST_CASE("edge list output") {
  auto g = from_edges(4, {{2, 0}, {1, 3}});
  std::ostringstream os;
  write_edge_list(g, os);
  CHECK(os.str() == "0 2\n1 3\n");
}
