#pragma once

#include <cstdint>
#include <vector>

#include "hiermap/dist_graph.hpp"
#include "hiermap/graph.hpp"
#include "hiermap/topology.hpp"

namespace hiermap {

enum class Objective { coco, edgecut };

struct LpaParams {
  std::uint32_t iterations = 5;
  NodeWeight weight_cap = 0; // per label / block
  std::uint64_t seed = 0;
};

// Size-constrained clustering for coarsening. Starts from singletons; each
// sweep moves a vertex to the strongest adjacent label that can still host
// it under the cap (localized weight bookkeeping, ghost labels one phase
// stale). A final recount evicts overflow so the cap holds globally; forced
// singletons heavier than the cap stay put. Output ids are contiguous.
std::vector<NodeID> cluster_coarsen(DistGraph& dg, const LpaParams& p);

struct RefineStats {
  std::vector<CostT> phase_objective; // exact objective after each phase
  std::uint32_t moves = 0;
  std::uint32_t extra_phases = 0;     // overload-escape phases appended
};

// Mapping refinement: each vertex considers the blocks of its neighbors and
// takes the one minimizing sum of edge weight times PE distance, under the
// cap (1+eps) * ceil(W/k) with exact block weights re-synchronized every
// phase. Zero-gain moves out of overloaded blocks are admitted in the phase
// after an overload is detected.
Mapping refine_map(DistGraph& dg, const Mapping& m, const Topology& t, const LpaParams& p,
                   double eps, Objective objective = Objective::coco, RefineStats* stats = nullptr);

// Coco contribution of vertex v if assigned to block b, neighbors read from
// the given label view.
CostT assignment_cost(const Graph& g, NodeID v, BlockID b, std::span<const BlockID> labels,
                      const Topology& t);

} // namespace hiermap
