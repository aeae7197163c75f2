#pragma once

#include <vector>

#include "hiermap/graph.hpp"

namespace hiermap {

struct ContractionResult {
  Graph coarse;
  std::vector<NodeID> projection; // fine vertex -> coarse vertex
  NodeID num_coarse() const { return coarse.n(); }
};

// Contracts clusters into super-vertices. Cluster ids may be arbitrary;
// they are renumbered to [0, n_c) by first appearance. Coarse vertex weight
// is the sum of member weights, coarse edge weight the sum of crossing edge
// weights; intra-cluster edges vanish.
ContractionResult contract(const Graph& g, const std::vector<NodeID>& cluster);

} // namespace hiermap
