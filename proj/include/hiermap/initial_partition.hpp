#pragma once

#include <cstdint>

#include "hiermap/graph.hpp"
#include "hiermap/topology.hpp"

namespace hiermap {

struct InitialPartitionResult {
  Mapping mapping;
  bool feasible = true; // false when some vertex exceeded the block cap
};

// Partitions the (gathered, small) coarse graph into k = #PEs blocks and
// assigns block i to PE i. The recursion follows the hierarchy factorization
// top level first, so blocks that share cheap ancestors receive adjacent
// index ranges; each split uses greedy graph growing from a pseudo-peripheral
// seed plus a boundary gain pass, and a final repair pass enforces the cap
// (1+eps) * ceil(W/k) whenever vertex weights permit.
InitialPartitionResult initial_partition(const Graph& coarse, const Topology& t, double eps,
                                         std::uint64_t seed);

// Independent tries with distinct seeds (seed + i); the candidate with the
// lowest objective value wins, ties resolved by the secondary metric and
// then the lowest seed. With tries == 1 this is initial_partition.
InitialPartitionResult run_multistart(const Graph& coarse, const Topology& t, double eps,
                                      std::uint32_t tries, std::uint64_t seed,
                                      bool optimize_coco = true);

} // namespace hiermap
