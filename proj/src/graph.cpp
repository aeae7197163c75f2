#include "hiermap/graph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace hiermap {

Graph Graph::from_csr(std::vector<EdgeID> offsets, std::vector<NodeID> neighbors,
                      std::vector<EdgeWeight> edge_weights, std::vector<NodeWeight> vertex_weights) {
  Graph g;
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(neighbors);
  g.edge_weights_ = std::move(edge_weights);
  g.vertex_weights_ = std::move(vertex_weights);
  g.total_vertex_weight_ = std::accumulate(g.vertex_weights_.begin(), g.vertex_weights_.end(), NodeWeight{0});
  g.total_edge_weight_ = std::accumulate(g.edge_weights_.begin(), g.edge_weights_.end(), EdgeWeight{0}) / 2;
  return g;
}

bool Graph::has_uniform_vertex_weights() const {
  return std::all_of(vertex_weights_.begin(), vertex_weights_.end(),
                     [](NodeWeight w) { return w == 1; });
}

bool Graph::has_uniform_edge_weights() const {
  return std::all_of(edge_weights_.begin(), edge_weights_.end(),
                     [](EdgeWeight w) { return w == 1; });
}

void GraphBuilder::add_edge(NodeID u, NodeID v, EdgeWeight w) {
  if (u == v) return;
  edges_.emplace_back(u, v, w);
}

Graph GraphBuilder::build() {
  const NodeID n = n_;
  std::vector<EdgeID> offsets(n + 1, 0);
  for (const auto& [u, v, w] : edges_) {
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (NodeID u = 0; u < n; ++u) offsets[u + 1] += offsets[u];

  std::vector<NodeID> adj(offsets[n]);
  std::vector<EdgeWeight> wgt(offsets[n]);
  {
    std::vector<EdgeID> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v, w] : edges_) {
      adj[cursor[u]] = v;
      wgt[cursor[u]++] = w;
      adj[cursor[v]] = u;
      wgt[cursor[v]++] = w;
    }
  }

  // sort each list, merge parallel edges
  std::vector<EdgeID> out_offsets(n + 1, 0);
  std::vector<std::pair<NodeID, EdgeWeight>> scratch;
  EdgeID write = 0;
  for (NodeID u = 0; u < n; ++u) {
    scratch.clear();
    for (EdgeID e = offsets[u]; e < offsets[u + 1]; ++e) {
      scratch.emplace_back(adj[e], wgt[e]);
    }
    std::sort(scratch.begin(), scratch.end());
    EdgeID begin = write;
    for (std::size_t i = 0; i < scratch.size(); ++i) {
      if (write > begin && adj[write - 1] == scratch[i].first) {
        wgt[write - 1] += scratch[i].second;
      } else {
        adj[write] = scratch[i].first;
        wgt[write] = scratch[i].second;
        ++write;
      }
    }
    out_offsets[u + 1] = write;
  }
  adj.resize(write);
  wgt.resize(write);

  return Graph::from_csr(std::move(out_offsets), std::move(adj), std::move(wgt),
                         std::move(vertex_weights_));
}

void Mapping::validate() const {
  for (NodeID v = 0; v < n(); ++v) {
    if (block[v] >= k) {
      throw InputError("vertex " + std::to_string(v) + " mapped to block " +
                       std::to_string(block[v]) + " >= k = " + std::to_string(k));
    }
  }
}

} // namespace hiermap
