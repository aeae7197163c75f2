#include "hiermap/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hiermap {

CostT coco(const Graph& g, const Mapping& m, const Topology& t) {
  CostT total = 0;
  for (NodeID u = 0; u < g.n(); ++u) {
    const PELabel lu = t.pe_label(m.block[u]);
    auto nbrs = g.neighbors(u);
    auto wgts = g.edge_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeID v = nbrs[i];
      if (v <= u) continue; // each edge once
      total += wgts[i] * t.distance(lu, t.pe_label(m.block[v]));
    }
  }
  return total;
}

EdgeWeight edgecut(const Graph& g, const Mapping& m) {
  EdgeWeight total = 0;
  for (NodeID u = 0; u < g.n(); ++u) {
    auto nbrs = g.neighbors(u);
    auto wgts = g.edge_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeID v = nbrs[i];
      if (v <= u) continue;
      if (m.block[u] != m.block[v]) total += wgts[i];
    }
  }
  return total;
}

std::vector<NodeWeight> block_weights(const Graph& g, const Mapping& m, BlockID k) {
  std::vector<NodeWeight> w(k, 0);
  for (NodeID v = 0; v < g.n(); ++v) w[m.block[v]] += g.vertex_weight(v);
  return w;
}

double imbalance(const Graph& g, const Mapping& m, BlockID k) {
  if (k == 0) throw InputError("imbalance requires k >= 1");
  const NodeWeight total = g.total_vertex_weight();
  const NodeWeight target = (total + k - 1) / k;
  if (target == 0) return 0.0;
  const auto weights = block_weights(g, m, k);
  const NodeWeight heaviest = *std::max_element(weights.begin(), weights.end());
  return static_cast<double>(heaviest) / static_cast<double>(target) - 1.0;
}

NodeWeight block_weight_cap(NodeWeight total_weight, BlockID k, double eps) {
  const NodeWeight target = (total_weight + k - 1) / k;
  // small slack so that e.g. 0.03 * 300 lands on 9, not 8.999...
  return target + static_cast<NodeWeight>(std::floor(eps * static_cast<double>(target) + 1e-9));
}

} // namespace hiermap
