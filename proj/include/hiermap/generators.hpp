#pragma once

#include <cstdint>
#include <vector>

#include "hiermap/graph.hpp"

namespace hiermap {

// Barabasi-Albert preferential attachment: seed clique of `attach` vertices,
// every later vertex attaches to `attach` distinct existing vertices chosen
// proportionally to degree. m = attach*(n-attach) + C(attach,2), connected,
// unit weights.
Graph gen_ba(NodeID n, NodeID attach, std::uint64_t seed);

struct RmatParams {
  double a = 0.57, b = 0.19, c = 0.19, d = 0.05; // Graph500-style defaults
};

// R-MAT: 2^scale vertices, edge_factor * 2^scale sampled edges; self-loops
// dropped, duplicates kept once, symmetrized. Possibly disconnected.
Graph gen_rmat(std::uint32_t scale, std::uint32_t edge_factor, const RmatParams& p, std::uint64_t seed);

struct LargestCcResult {
  Graph graph;
  std::vector<NodeID> old_to_new; // kInvalidNode for vertices outside the component
};

// Induced subgraph on the largest connected component, vertices renumbered
// contiguously in original order. Ties go to the component with the lowest
// minimum vertex id.
LargestCcResult largest_cc(const Graph& g);

} // namespace hiermap
