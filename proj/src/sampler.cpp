#include "lembed/sampler.hpp"

#include <bit>

#include "lembed/kernels/kernels.hpp"
#include "lembed/verify.hpp"

namespace lembed {

namespace {

constexpr double kBandTolerance = 1e-9;

SampledGraph empty_graph(std::size_t n, std::uint64_t seed) {
  SampledGraph graph;
  graph.n = n;
  graph.seed = seed;
  graph.words = (n + 63) / 64;
  graph.adjacency.assign(n * graph.words, 0);
  graph.labels = sample_labels(n, seed);
  return graph;
}

void set_edge(SampledGraph& graph, std::size_t i, std::size_t j) {
  graph.adjacency[i * graph.words + j / 64] |= std::uint64_t{1} << (j % 64);
  graph.adjacency[j * graph.words + i / 64] |= std::uint64_t{1} << (i % 64);
}

std::vector<double> alphas(const StepGraphon& g) {
  std::vector<double> out;
  for (const auto& a : g.values()) out.push_back(a.to_double());
  return out;
}

// Shared row loop: `bands(i, lo, hi)` fills the per-row band limits, `values`
// are the compared coordinates, `exact(i, j)` resolves ambiguous lanes.
template <class Bands, class Exact>
void fill_rows(SampledGraph& graph, const std::vector<double>& alpha, const std::vector<double>& values,
               std::size_t band_count, Bands bands, Exact exact) {
  const auto& k = kernels::active_kernels();
  const std::size_t n = graph.n;
  std::vector<double> lo(band_count), hi(band_count), u(n);
  std::vector<std::uint8_t> level(n), amb(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t count = n - i - 1;
    const std::uint64_t first = static_cast<std::uint64_t>(i) * n - static_cast<std::uint64_t>(i) * (i + 1) / 2;
    k.uniforms(graph.seed, kernels::kPairStream, first, count, u.data());
    bands(i, lo.data(), hi.data());
    k.band_levels(values.data() + i + 1, count, lo.data(), hi.data(), band_count, kBandTolerance, level.data(),
                  amb.data());
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t j = i + 1 + t;
      const std::size_t lv = amb[t] ? exact(i, j) : level[t];
      if (u[t] < alpha[lv - 1]) set_edge(graph, i, j);
    }
  }
}

}  // namespace

std::uint64_t SampledGraph::edge_count() const {
  std::uint64_t total = 0;
  for (auto w : adjacency) total += static_cast<std::uint64_t>(std::popcount(w));
  return total / 2;
}

std::vector<double> sample_labels(std::size_t n, std::uint64_t seed) {
  std::vector<double> labels(n);
  kernels::active_kernels().uniforms(seed, kernels::kLabelStream, 0, n, labels.data());
  return labels;
}

SampledGraph sample_w_graph(const StepGraphon& g, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  SampledGraph graph = empty_graph(n, seed);
  std::vector<Rational> exact;
  exact.reserve(n);
  for (double x : graph.labels) exact.push_back(Rational::from_double(x));
  const std::size_t m = g.boundary_count();
  fill_rows(
      graph, alphas(g), graph.labels, m,
      [&](std::size_t i, double* lo, double* hi) {
        for (std::size_t b = 0; b < m; ++b) {
          lo[b] = g.lower_at(b + 1, exact[i]).to_double();
          hi[b] = g.upper_at(b + 1, exact[i]).to_double();
        }
      },
      [&](std::size_t i, std::size_t j) { return level_at(g, exact[i], exact[j]); });
  return graph;
}

SampledGraph sample_geometric(const StepGraphon& g, const Embedding& e, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (e.thresholds.size() != g.boundary_count()) throw std::invalid_argument("threshold count does not match graphon");
  SampledGraph graph = empty_graph(n, seed);
  std::vector<Rational> pis;
  std::vector<double> pid;
  pis.reserve(n);
  for (double x : graph.labels) {
    pis.push_back(e.pi(Rational::from_double(x)));
    pid.push_back(pis.back().to_double());
  }
  std::vector<double> d;
  for (const auto& t : e.thresholds) d.push_back(t.to_double());
  const std::size_t m = d.size();
  fill_rows(
      graph, alphas(g), pid, m,
      [&](std::size_t i, double* lo, double* hi) {
        for (std::size_t b = 0; b < m; ++b) {
          lo[b] = pid[i] - d[b];
          hi[b] = pid[i] + d[b];
        }
      },
      [&](std::size_t i, std::size_t j) {
        const Rational gap = abs(pis[i] - pis[j]);
        for (std::size_t b = 0; b < m; ++b)
          if (gap <= e.thresholds[b]) return b + 1;
        return m + 1;
      });
  return graph;
}

GraphStats graph_stats(const SampledGraph& graph) {
  const auto& k = kernels::active_kernels();
  const std::size_t n = graph.n;
  GraphStats s;
  std::vector<std::uint64_t> degree(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t w = 0; w < graph.words; ++w) degree[i] += static_cast<std::uint64_t>(std::popcount(graph.row(i)[w]));
  std::uint64_t edges = 0;
  for (auto dg : degree) edges += dg;
  edges /= 2;
  s.degree_histogram.assign(n == 0 ? 1 : n, 0);
  for (auto dg : degree) ++s.degree_histogram[dg];
  while (s.degree_histogram.size() > 1 && s.degree_histogram.back() == 0) s.degree_histogram.pop_back();
  if (n >= 2) s.edge_density = 2.0 * static_cast<double>(edges) / (static_cast<double>(n) * static_cast<double>(n - 1));
  if (n >= 3) {
    std::uint64_t paths = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (graph.edge(i, j)) paths += k.and_popcount(graph.row(i), graph.row(j), graph.words);
    s.triangles = paths / 3;
    const double nn = static_cast<double>(n);
    s.triangle_density = 6.0 * static_cast<double>(s.triangles) / (nn * (nn - 1) * (nn - 2));
  }
  return s;
}

void write_edge_list(const SampledGraph& graph, std::ostream& out) {
  for (std::size_t i = 0; i < graph.n; ++i)
    for (std::size_t j = i + 1; j < graph.n; ++j)
      if (graph.edge(i, j)) out << i << ' ' << j << '\n';
}

}  // namespace lembed
