#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spacetext {

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 1.0;
};

// Undirected weighted graph on nodes 0..n-1. Parallel edges add up; a
// self-loop contributes its weight once to the edge total.
struct WeightedGraph {
  std::size_t nodes = 0;
  std::vector<WeightedEdge> edges;
};

struct Partition {
  std::vector<std::size_t> community;  // node -> community id, ids dense from 0
  double modularity = 0.0;
  std::uint64_t seed = 0;
  double resolution = 1.0;
  // Modularity after each accepted improvement phase; non-decreasing.
  std::vector<double> level_modularity;

  std::size_t community_count() const;
};

// Sum over communities of e_c/m - resolution * (d_c / 2m)^2. Zero for an
// edgeless graph.
double modularity(const WeightedGraph& g, const std::vector<std::size_t>& community,
                  double resolution = 1.0);

Partition louvain(const WeightedGraph& g, std::uint64_t seed, double resolution = 1.0);

}  // namespace spacetext
