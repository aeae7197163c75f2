#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hiermap/graph.hpp"

namespace hiermap {

struct AppliedUpdate {
  NodeID vertex;
  BlockID old_label;
  BlockID new_label;
};

// A Graph split across `workers` virtual PEs as contiguous vertex ranges.
// Worker w owns [floor(w*n/V), floor((w+1)*n/V)). Non-owned endpoints of
// local edges are ghosts with a locally cached label that trails the true
// label by exactly one phase: changes recorded during phase i are delivered
// by exchange_for at the i/i+1 boundary.
class DistGraph {
public:
  DistGraph() = default;

  const Graph& graph() const { return *graph_; }
  int workers() const { return workers_; }

  NodeID range_begin(int w) const { return range_[w]; }
  NodeID range_end(int w) const { return range_[w + 1]; }
  int owner(NodeID v) const;

  bool is_ghost(int w, NodeID v) const { return local_[w].ghost_slot[v] != kInvalidNode; }
  bool is_interface(int w, NodeID v) const { return local_[w].interface_flag[v - range_[w]] != 0; }
  std::span<const NodeID> ghosts(int w) const { return local_[w].ghost_ids; }

  BlockID ghost_label(int w, NodeID v) const { return local_[w].ghost_cache[local_[w].ghost_slot[v]]; }

  // label of a neighbor as seen by worker w: authoritative when owned,
  // cached when ghost
  BlockID neighbor_label(int w, NodeID v, std::span<const BlockID> labels) const {
    const NodeID slot = local_[w].ghost_slot[v];
    return slot == kInvalidNode ? labels[v] : local_[w].ghost_cache[slot];
  }

  // (re)fill every ghost cache from an authoritative label array; call at
  // algorithm start, outside any phase
  void reset_ghost_labels(std::span<const BlockID> labels);

  // record that owned vertex v took new_label during the current phase;
  // no-op for non-interface vertices
  void record_change(int w, NodeID v, BlockID new_label);

  // phase boundary, receiver side: apply all buffers destined to w to its
  // ghost cache, report them, clear the buffers. Caller must barrier before
  // and after so sends of phase i never mix with sends of phase i+1.
  void exchange_for(int w, std::vector<AppliedUpdate>& applied);

  static DistGraph build(const Graph& g, int workers);

private:
  struct WorkerLocal {
    std::vector<NodeID> ghost_ids;          // sorted
    std::vector<NodeID> ghost_slot;         // dense, n entries, kInvalidNode = not a ghost
    std::vector<BlockID> ghost_cache;       // one per ghost
    std::vector<std::uint8_t> interface_flag; // one per owned vertex
    std::vector<EdgeID> target_offsets;     // per owned vertex: slice of target_workers
    std::vector<int> target_workers;        // adjacent workers of interface vertices
    std::vector<std::vector<std::pair<NodeID, BlockID>>> send; // one buffer per destination worker
  };

  const Graph* graph_ = nullptr;
  int workers_ = 0;
  std::vector<NodeID> range_;               // workers + 1
  std::vector<WorkerLocal> local_;
};

enum class WeightMode { localized, exact };

// Block-weight bookkeeping of the label propagation protocol. In exact mode
// every worker sees the globally agreed totals of the last synchronization
// plus its own uncommitted deltas; sync_block_weights folds all deltas into
// the shared totals. Localized mode holds one private label->weight map per
// worker and never synchronizes.
class BlockWeights {
public:
  static BlockWeights exact(std::vector<NodeWeight> totals, int workers);
  static BlockWeights localized(int workers);

  WeightMode mode() const { return mode_; }

  // exact mode -------------------------------------------------------------
  NodeWeight shared_total(BlockID b) const { return totals_[b]; }
  NodeWeight view(int w, BlockID b) const { return totals_[b] + deltas_[w][b]; }
  void apply_move(int w, BlockID from, BlockID to, NodeWeight weight);
  void sync(); // throws InputError in localized mode
  const std::vector<NodeWeight>& totals() const { return totals_; }

  // localized mode ---------------------------------------------------------
  NodeWeight local_weight(int w, NodeID label) const;
  void local_add(int w, NodeID label, NodeWeight delta);

private:
  WeightMode mode_ = WeightMode::exact;
  std::vector<NodeWeight> totals_;
  std::vector<std::vector<NodeWeight>> deltas_;
  std::vector<std::unordered_map<NodeID, NodeWeight>> local_;
};

// Runs body(worker_id) on `workers` concurrent threads (inline when
// workers == 1) and joins. The body coordinates phases via the barrier
// passed to it.
void run_workers(int workers, const std::function<void(int)>& body);

} // namespace hiermap
