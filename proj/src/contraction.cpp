#include "hiermap/contraction.hpp"

#include <algorithm>
#include <unordered_map>

namespace hiermap {

ContractionResult contract(const Graph& g, const std::vector<NodeID>& cluster) {
  const NodeID n = g.n();
  if (cluster.size() != n) {
    throw InputError("cluster array has " + std::to_string(cluster.size()) + " entries, expected " +
                     std::to_string(n));
  }

  // renumber by first appearance
  std::unordered_map<NodeID, NodeID> renumber;
  renumber.reserve(n);
  std::vector<NodeID> projection(n);
  NodeID n_c = 0;
  for (NodeID v = 0; v < n; ++v) {
    auto [it, inserted] = renumber.emplace(cluster[v], n_c);
    if (inserted) ++n_c;
    projection[v] = it->second;
  }

  std::vector<NodeWeight> coarse_vwgt(n_c, 0);
  for (NodeID v = 0; v < n; ++v) coarse_vwgt[projection[v]] += g.vertex_weight(v);

  // group fine vertices by coarse id (counting sort), then merge sorted
  // neighbor lists per coarse vertex
  std::vector<EdgeID> bucket_offsets(n_c + 1, 0);
  for (NodeID v = 0; v < n; ++v) ++bucket_offsets[projection[v] + 1];
  for (NodeID c = 0; c < n_c; ++c) bucket_offsets[c + 1] += bucket_offsets[c];
  std::vector<NodeID> members(n);
  {
    std::vector<EdgeID> cursor(bucket_offsets.begin(), bucket_offsets.end() - 1);
    for (NodeID v = 0; v < n; ++v) members[cursor[projection[v]]++] = v;
  }

  std::vector<EdgeID> offsets(n_c + 1, 0);
  std::vector<NodeID> neighbors;
  std::vector<EdgeWeight> weights;
  std::vector<std::pair<NodeID, EdgeWeight>> scratch;
  for (NodeID c = 0; c < n_c; ++c) {
    scratch.clear();
    for (EdgeID i = bucket_offsets[c]; i < bucket_offsets[c + 1]; ++i) {
      const NodeID v = members[i];
      auto nbrs = g.neighbors(v);
      auto wgts = g.edge_weights(v);
      for (std::size_t j = 0; j < nbrs.size(); ++j) {
        const NodeID cu = projection[nbrs[j]];
        if (cu != c) scratch.emplace_back(cu, wgts[j]);
      }
    }
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < scratch.size(); ++i) {
      if (neighbors.size() > offsets[c] && neighbors.back() == scratch[i].first) {
        weights.back() += scratch[i].second;
      } else {
        neighbors.push_back(scratch[i].first);
        weights.push_back(scratch[i].second);
      }
    }
    offsets[c + 1] = neighbors.size();
  }

  ContractionResult result;
  result.coarse = Graph::from_csr(std::move(offsets), std::move(neighbors), std::move(weights),
                                  std::move(coarse_vwgt));
  result.projection = std::move(projection);
  return result;
}

} // namespace hiermap
