#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hiermap/types.hpp"

namespace hiermap {

// Undirected graph in compressed adjacency form. Canonical: neighbor lists
// sorted ascending, every edge present in both lists with equal weight, no
// self-loops, no parallel edges.
class Graph {
public:
  Graph() = default;

  NodeID n() const { return static_cast<NodeID>(vertex_weights_.size()); }
  EdgeID m() const { return static_cast<EdgeID>(neighbors_.size()) / 2; }

  EdgeID degree(NodeID u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const NodeID> neighbors(NodeID u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::span<const EdgeWeight> edge_weights(NodeID u) const {
    return {edge_weights_.data() + offsets_[u], edge_weights_.data() + offsets_[u + 1]};
  }

  NodeWeight vertex_weight(NodeID u) const { return vertex_weights_[u]; }
  NodeWeight total_vertex_weight() const { return total_vertex_weight_; }
  EdgeWeight total_edge_weight() const { return total_edge_weight_; } // each edge once

  bool has_uniform_vertex_weights() const;
  bool has_uniform_edge_weights() const;

  friend bool operator==(const Graph& a, const Graph& b) = default;

  // Construction from canonical arrays; validates nothing beyond sizes.
  static Graph from_csr(std::vector<EdgeID> offsets, std::vector<NodeID> neighbors,
                        std::vector<EdgeWeight> edge_weights, std::vector<NodeWeight> vertex_weights);

private:
  std::vector<EdgeID> offsets_;       // n + 1
  std::vector<NodeID> neighbors_;     // 2m
  std::vector<EdgeWeight> edge_weights_;
  std::vector<NodeWeight> vertex_weights_;
  NodeWeight total_vertex_weight_ = 0;
  EdgeWeight total_edge_weight_ = 0;
};

// Accumulates undirected edges (each once) and produces a canonical Graph.
// Parallel edges are merged by summing weights; self-loops are dropped.
class GraphBuilder {
public:
  explicit GraphBuilder(NodeID n) : n_(n), vertex_weights_(n, 1) {}

  void add_edge(NodeID u, NodeID v, EdgeWeight w = 1);
  void set_vertex_weight(NodeID u, NodeWeight w) { vertex_weights_[u] = w; }

  Graph build();

private:
  NodeID n_;
  std::vector<std::tuple<NodeID, NodeID, EdgeWeight>> edges_;
  std::vector<NodeWeight> vertex_weights_;
};

// Block assignment of every vertex; blocks identify PEs by index.
struct Mapping {
  std::vector<BlockID> block;
  BlockID k = 0;

  NodeID n() const { return static_cast<NodeID>(block.size()); }
  void validate() const; // throws InputError if any block >= k
};

} // namespace hiermap
