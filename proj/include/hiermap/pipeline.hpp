#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hiermap/graph.hpp"
#include "hiermap/lpa.hpp"
#include "hiermap/topology.hpp"

namespace hiermap {

struct PipelineConfig {
  double eps = 0.03;
  int workers = 1;
  std::uint64_t seed = 0;
  std::uint32_t coarsen_iterations = 5;
  std::uint32_t refine_rounds = 3;       // per uncoarsening level
  std::uint32_t post_rounds = 2;         // on the original graph
  NodeID stop_threshold = 0;             // 0 = max(30k, 3000)
  EdgeID hub_threshold = 0;              // 0 = max(64 * avg degree, 256)
  Objective objective = Objective::coco;
  bool preprocessing = true;

  void validate() const;
};

struct StageTimes {
  double total_ms = 0;
  double preprocess_ms = 0;
  double coarsen_ms = 0;
  double initial_ms = 0;
  double refine_ms = 0;
  double post_ms = 0;
};

struct RunReport {
  CostT coco = 0;
  EdgeWeight edgecut = 0;
  double imbalance = 0;
  BlockID k = 0;
  NodeID n = 0;
  EdgeID m = 0;
  std::uint32_t levels = 0;
  StageTimes time;
  std::uint64_t seed = 0;
  int workers = 0;
  bool feasible = true;

  // diagnostics, not part of the serialized report
  std::vector<CostT> refine_objective_trace; // after every refinement phase
  EdgeID removed_edges = 0;
};

struct RemovedEdge {
  NodeID u; // u < v
  NodeID v;
  EdgeWeight weight;
  friend bool operator==(const RemovedEdge&, const RemovedEdge&) = default;
};

struct HubReduction {
  Graph graph;
  std::vector<RemovedEdge> removed;
};

// Temporarily removes edges between high-degree halo vertices and vertices
// owned by other workers. A vertex is a hub iff its degree exceeds the
// threshold; only edges crossing worker ranges and touching a hub go.
HubReduction reduce_halo_hubs(const Graph& g, int workers, EdgeID degree_threshold);

// Inverse of reduce_halo_hubs: fails with InputError if an edge is already
// present or listed twice.
Graph reintroduce_edges(const Graph& reduced, const std::vector<RemovedEdge>& removed);

struct MapResult {
  Mapping mapping;
  RunReport report;
};

// The full cycle: optional hub reduction, coarsen by size-constrained
// clustering until small, partition the gathered coarsest graph, project
// back level by level with mapping refinement, re-introduce removed edges,
// then a few extra refinement rounds on the original graph.
MapResult map_graph(const Graph& g, const Topology& t, const PipelineConfig& cfg);

} // namespace hiermap
