#pragma once

#include <vector>

#include "hiermap/graph.hpp"
#include "hiermap/topology.hpp"

namespace hiermap {

// Communication cost: sum over undirected edges of edge weight times the
// distance between the PEs the endpoints map to.
CostT coco(const Graph& g, const Mapping& m, const Topology& t);

// Total weight of edges whose endpoints lie in different blocks.
EdgeWeight edgecut(const Graph& g, const Mapping& m);

// max_b weight(b) / ceil(W_total / k) - 1; weighted generalization of the
// cardinality balance constraint.
double imbalance(const Graph& g, const Mapping& m, BlockID k);

std::vector<NodeWeight> block_weights(const Graph& g, const Mapping& m, BlockID k);

// Weight cap enforcing tolerance eps: floor((1 + eps) * ceil(W / k)).
NodeWeight block_weight_cap(NodeWeight total_weight, BlockID k, double eps);

} // namespace hiermap
