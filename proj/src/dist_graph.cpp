#include "hiermap/dist_graph.hpp"

#include <algorithm>
#include <thread>

namespace hiermap {

int DistGraph::owner(NodeID v) const {
  const NodeID n = graph_->n();
  int w = static_cast<int>((static_cast<std::uint64_t>(v) * workers_) / n);
  while (v < range_[w]) --w;
  while (v >= range_[w + 1]) ++w;
  return w;
}

DistGraph DistGraph::build(const Graph& g, int workers) {
  if (workers < 1) throw InputError("worker count must be >= 1");
  if (static_cast<NodeID>(workers) > g.n()) {
    throw InputError("worker count " + std::to_string(workers) + " exceeds vertex count " +
                     std::to_string(g.n()));
  }

  DistGraph dg;
  dg.graph_ = &g;
  dg.workers_ = workers;
  dg.range_.resize(workers + 1);
  const std::uint64_t n = g.n();
  for (int w = 0; w <= workers; ++w) {
    dg.range_[w] = static_cast<NodeID>(w * n / workers);
  }

  dg.local_.resize(workers);
  for (int w = 0; w < workers; ++w) {
    WorkerLocal& loc = dg.local_[w];
    const NodeID begin = dg.range_[w], end = dg.range_[w + 1];
    loc.ghost_slot.assign(g.n(), kInvalidNode);
    loc.interface_flag.assign(end - begin, 0);
    loc.send.resize(workers);

    for (NodeID v = begin; v < end; ++v) {
      for (NodeID u : g.neighbors(v)) {
        if (u < begin || u >= end) {
          loc.interface_flag[v - begin] = 1;
          if (loc.ghost_slot[u] == kInvalidNode) {
            loc.ghost_slot[u] = 0; // placeholder, fixed after sorting
            loc.ghost_ids.push_back(u);
          }
        }
      }
    }
    std::sort(loc.ghost_ids.begin(), loc.ghost_ids.end());
    for (NodeID slot = 0; slot < loc.ghost_ids.size(); ++slot) {
      loc.ghost_slot[loc.ghost_ids[slot]] = slot;
    }
    loc.ghost_cache.assign(loc.ghost_ids.size(), kInvalidBlock);

    // per interface vertex: sorted unique owners of its ghost neighbors
    loc.target_offsets.assign(end - begin + 1, 0);
    std::vector<int> scratch;
    for (NodeID v = begin; v < end; ++v) {
      loc.target_offsets[v - begin] = loc.target_workers.size();
      if (!loc.interface_flag[v - begin]) continue;
      scratch.clear();
      for (NodeID u : g.neighbors(v)) {
        if (u < begin || u >= end) scratch.push_back(dg.owner(u));
      }
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
      loc.target_workers.insert(loc.target_workers.end(), scratch.begin(), scratch.end());
    }
    loc.target_offsets[end - begin] = loc.target_workers.size();
  }
  return dg;
}

void DistGraph::reset_ghost_labels(std::span<const BlockID> labels) {
  for (WorkerLocal& loc : local_) {
    for (NodeID slot = 0; slot < loc.ghost_ids.size(); ++slot) {
      loc.ghost_cache[slot] = labels[loc.ghost_ids[slot]];
    }
    for (auto& buf : loc.send) buf.clear();
  }
}

void DistGraph::record_change(int w, NodeID v, BlockID new_label) {
  WorkerLocal& loc = local_[w];
  const NodeID local_index = v - range_[w];
  if (!loc.interface_flag[local_index]) return;
  for (EdgeID i = loc.target_offsets[local_index]; i < loc.target_offsets[local_index + 1]; ++i) {
    loc.send[loc.target_workers[i]].emplace_back(v, new_label);
  }
}

void DistGraph::exchange_for(int w, std::vector<AppliedUpdate>& applied) {
  WorkerLocal& mine = local_[w];
  for (int src = 0; src < workers_; ++src) {
    auto& buf = local_[src].send[w];
    for (const auto& [v, label] : buf) {
      const NodeID slot = mine.ghost_slot[v];
      const BlockID old = mine.ghost_cache[slot];
      if (old != label) {
        mine.ghost_cache[slot] = label;
        applied.push_back({v, old, label});
      }
    }
    buf.clear();
  }
}

BlockWeights BlockWeights::exact(std::vector<NodeWeight> totals, int workers) {
  BlockWeights bw;
  bw.mode_ = WeightMode::exact;
  bw.totals_ = std::move(totals);
  bw.deltas_.assign(workers, std::vector<NodeWeight>(bw.totals_.size(), 0));
  return bw;
}

BlockWeights BlockWeights::localized(int workers) {
  BlockWeights bw;
  bw.mode_ = WeightMode::localized;
  bw.local_.resize(workers);
  return bw;
}

void BlockWeights::apply_move(int w, BlockID from, BlockID to, NodeWeight weight) {
  deltas_[w][from] -= weight;
  deltas_[w][to] += weight;
}

void BlockWeights::sync() {
  if (mode_ != WeightMode::exact) {
    throw InputError("sync_block_weights requires exact mode");
  }
  for (auto& delta : deltas_) {
    for (BlockID b = 0; b < totals_.size(); ++b) {
      totals_[b] += delta[b];
      delta[b] = 0;
    }
  }
}

NodeWeight BlockWeights::local_weight(int w, NodeID label) const {
  auto it = local_[w].find(label);
  return it == local_[w].end() ? 0 : it->second;
}

void BlockWeights::local_add(int w, NodeID label, NodeWeight delta) {
  NodeWeight& slot = local_[w][label];
  slot += delta;
  if (slot == 0) local_[w].erase(label);
}

void run_workers(int workers, const std::function<void(int)>& body) {
  if (workers == 1) {
    body(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          body(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

} // namespace hiermap
