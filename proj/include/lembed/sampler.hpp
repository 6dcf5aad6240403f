#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "lembed/embedding.hpp"
#include "lembed/graphon.hpp"

namespace lembed {

/// Labels and pair uniforms come from Philox4x32-10 keyed by the seed.
struct SampledGraph {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> labels;
  /// Row-major bit matrix, `words` 64-bit words per row.
  std::size_t words = 0;
  std::vector<std::uint64_t> adjacency;

  bool edge(std::size_t i, std::size_t j) const { return (adjacency[i * words + j / 64] >> (j % 64)) & 1u; }
  const std::uint64_t* row(std::size_t i) const { return adjacency.data() + i * words; }
  std::uint64_t edge_count() const;

  friend bool operator==(const SampledGraph&, const SampledGraph&) = default;
};

/// Labels x_0..x_{n-1} for a seed.
std::vector<double> sample_labels(std::size_t n, std::uint64_t seed);

SampledGraph sample_w_graph(const StepGraphon& g, std::size_t n, std::uint64_t seed);
SampledGraph sample_geometric(const StepGraphon& g, const Embedding& e, std::size_t n, std::uint64_t seed);

struct GraphStats {
  double edge_density = 0;
  std::optional<double> triangle_density;
  std::uint64_t triangles = 0;
  /// histogram[k] = number of vertices of degree k.
  std::vector<std::uint64_t> degree_histogram;
};

GraphStats graph_stats(const SampledGraph& graph);

/// "u v" per line, u < v, 0-indexed.
void write_edge_list(const SampledGraph& graph, std::ostream& out);

}  // namespace lembed
