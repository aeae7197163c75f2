#include "hiermap/initial_partition.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <queue>

#include "hiermap/metrics.hpp"
#include "hiermap/rng.hpp"

namespace hiermap {

namespace {

// BFS to the farthest vertex of `part_id` from `start`; ties by lowest id.
NodeID farthest_vertex(const Graph& g, const std::vector<std::uint32_t>& part, std::uint32_t part_id,
                       NodeID start, std::vector<NodeID>& dist) {
  std::vector<NodeID> frontier{start};
  std::vector<NodeID> visited{start};
  dist[start] = 0;
  NodeID last = start;
  NodeID last_depth = 0;
  std::vector<NodeID> next;
  NodeID depth = 0;
  while (!frontier.empty()) {
    ++depth;
    next.clear();
    for (NodeID u : frontier) {
      for (NodeID v : g.neighbors(u)) {
        if (part[v] != part_id || dist[v] != kInvalidNode) continue;
        dist[v] = depth;
        next.push_back(v);
        visited.push_back(v);
        if (depth > last_depth || (depth == last_depth && v < last)) {
          last = v;
          last_depth = depth;
        }
      }
    }
    frontier.swap(next);
  }
  for (NodeID u : visited) dist[u] = kInvalidNode;
  return last;
}

// Splits the vertices currently labeled `parent` into h parts with ids
// parent + c*stride, c in [0,h), weights proportional to their shares.
// Parts h-1..1 are grown greedily from pseudo-peripheral seeds; whatever
// remains keeps the parent id and becomes part 0.
void split_part(const Graph& g, std::vector<std::uint32_t>& part, const std::vector<NodeID>& members,
                std::uint32_t parent, std::uint32_t stride, std::uint32_t h, Rng& rng,
                std::uint64_t tie_salt, std::vector<NodeID>& dist_scratch) {
  NodeWeight total = 0;
  for (NodeID v : members) total += g.vertex_weight(v);

  std::vector<NodeWeight> target(h);
  for (std::uint32_t i = 0; i < h; ++i) {
    const auto lo = static_cast<NodeWeight>((static_cast<__int128>(total) * i) / h);
    const auto hi = static_cast<NodeWeight>((static_cast<__int128>(total) * (i + 1)) / h);
    target[i] = hi - lo;
  }

  std::vector<EdgeWeight> key(g.n(), -1); // connection to the growing part, -1 = unqueued

  for (std::uint32_t child = h; child-- > 1;) {
    const std::uint32_t grow_id = parent + child * stride;
    NodeWeight grown = 0;

    using Entry = std::tuple<EdgeWeight, std::uint64_t, NodeID>;
    std::priority_queue<Entry> heap;

    auto push_seed = [&]() -> bool {
      std::vector<NodeID> remaining;
      for (NodeID v : members) {
        if (part[v] == parent) remaining.push_back(v);
      }
      if (remaining.empty()) return false;
      NodeID start = remaining[rng.next_below(remaining.size())];
      start = farthest_vertex(g, part, parent, start, dist_scratch);
      start = farthest_vertex(g, part, parent, start, dist_scratch);
      key[start] = 0;
      heap.push({0, splitmix64(tie_salt ^ start), start});
      return true;
    };

    if (!push_seed()) break;
    while (grown < target[child]) {
      if (heap.empty()) {
        if (!push_seed()) break; // disconnected remainder
        continue;
      }
      auto [conn, tie, v] = heap.top();
      heap.pop();
      if (part[v] != parent || conn != key[v]) continue; // taken or stale
      part[v] = grow_id;
      grown += g.vertex_weight(v);
      auto nbrs = g.neighbors(v);
      auto wgts = g.edge_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const NodeID u = nbrs[i];
        if (part[u] != parent) continue;
        key[u] = (key[u] < 0 ? 0 : key[u]) + wgts[i];
        heap.push({key[u], splitmix64(tie_salt ^ u), u});
      }
    }
    for (NodeID v : members) {
      if (part[v] == parent) key[v] = -1;
    }
  }

  // boundary gain pass among the h siblings, kept within a one-item band
  // around the targets
  NodeWeight max_item = 1;
  for (NodeID v : members) max_item = std::max(max_item, g.vertex_weight(v));
  std::vector<NodeWeight> weight(h, 0);
  for (NodeID v : members) weight[(part[v] - parent) / stride] += g.vertex_weight(v);

  std::vector<EdgeWeight> conn(h, 0);
  for (int pass = 0; pass < 2; ++pass) {
    for (NodeID v : members) {
      const std::uint32_t mine = (part[v] - parent) / stride;
      bool boundary = false;
      auto nbrs = g.neighbors(v);
      auto wgts = g.edge_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const NodeID u = nbrs[i];
        const std::uint32_t offset = part[u] - parent;
        if (part[u] < parent || offset >= h * stride || offset % stride != 0) continue;
        conn[offset / stride] += wgts[i];
        boundary |= part[u] != part[v];
      }
      if (boundary) {
        const NodeWeight vw = g.vertex_weight(v);
        std::uint32_t best = mine;
        EdgeWeight best_conn = conn[mine];
        for (std::uint32_t c = 0; c < h; ++c) {
          if (c == mine || conn[c] <= best_conn) continue;
          if (weight[c] + vw > target[c] + max_item) continue;
          if (weight[mine] - vw < target[mine] - max_item) continue;
          best = c;
          best_conn = conn[c];
        }
        if (best != mine) {
          weight[mine] -= vw;
          weight[best] += vw;
          part[v] = parent + best * stride;
        }
      }
      std::fill(conn.begin(), conn.end(), 0);
    }
  }
}

// Moves vertices from blocks above the cap to the lightest block that can
// take them, least connectivity damage first. Returns false if some block
// cannot be repaired.
bool repair_balance(const Graph& g, std::vector<BlockID>& block, BlockID k, NodeWeight cap) {
  std::vector<NodeWeight> weight(k, 0);
  for (NodeID v = 0; v < g.n(); ++v) weight[block[v]] += g.vertex_weight(v);

  std::vector<std::vector<NodeID>> members(k);
  for (NodeID v = 0; v < g.n(); ++v) members[block[v]].push_back(v);

  bool feasible = true;
  for (BlockID b = 0; b < k; ++b) {
    while (weight[b] > cap) {
      BlockID dst = b;
      for (BlockID c = 0; c < k; ++c) {
        if (c != b && (dst == b || weight[c] < weight[dst])) dst = c;
      }
      NodeID pick = kInvalidNode;
      CostT pick_score = 0;
      if (dst != b) {
        for (NodeID v : members[b]) {
          if (block[v] != b) continue;
          if (weight[dst] + g.vertex_weight(v) > cap) continue;
          CostT score = 0;
          auto nbrs = g.neighbors(v);
          auto wgts = g.edge_weights(v);
          for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (block[nbrs[i]] == b) score += wgts[i];
            if (block[nbrs[i]] == dst) score -= wgts[i];
          }
          if (pick == kInvalidNode || score < pick_score || (score == pick_score && v < pick)) {
            pick = v;
            pick_score = score;
          }
        }
      }
      if (pick == kInvalidNode) {
        feasible = false;
        break;
      }
      weight[b] -= g.vertex_weight(pick);
      weight[dst] += g.vertex_weight(pick);
      block[pick] = dst;
      members[dst].push_back(pick);
    }
  }
  return feasible;
}

} // namespace

InitialPartitionResult initial_partition(const Graph& coarse, const Topology& t, double eps,
                                         std::uint64_t seed) {
  const NodeID n = coarse.n();
  const BlockID k = t.num_pes();
  if (n < k) throw InputError("coarse graph has fewer vertices than blocks");

  InitialPartitionResult result;
  result.mapping.k = k;
  if (k == 1) {
    result.mapping.block.assign(n, 0);
    return result;
  }

  Rng rng(mix_seed(seed, 0x1297));
  const auto& H = t.spec().children;

  // block_span[i] = number of PE indices below one level-i subtree; splitting
  // top level first with these strides makes the final part ids identical to
  // PE indices, so heavy cuts land on cheap (low-level) links
  std::vector<std::uint32_t> block_span(t.levels() + 1, 1);
  for (std::uint32_t i = 0; i < t.levels(); ++i) block_span[i + 1] = block_span[i] * H[i];

  std::vector<std::uint32_t> part(n, 0);
  std::vector<NodeID> dist_scratch(n, kInvalidNode);

  for (std::uint32_t level = t.levels(); level-- > 0;) {
    if (H[level] == 1) continue;
    // after deeper iterations every part id is a multiple of
    // block_span[level + 1]; gather members per parent in one scan
    std::vector<std::vector<NodeID>> groups(k / block_span[level + 1]);
    for (NodeID v = 0; v < n; ++v) {
      groups[part[v] / block_span[level + 1]].push_back(v);
    }
    for (std::uint32_t gidx = 0; gidx < groups.size(); ++gidx) {
      if (groups[gidx].empty()) continue;
      const std::uint32_t parent = gidx * block_span[level + 1];
      split_part(coarse, part, groups[gidx], parent, block_span[level], H[level], rng,
                 mix_seed(seed, level, gidx), dist_scratch);
    }
  }

  result.mapping.block.assign(part.begin(), part.end());
  const NodeWeight cap = block_weight_cap(coarse.total_vertex_weight(), k, eps);
  result.feasible = repair_balance(coarse, result.mapping.block, k, cap);
  return result;
}

InitialPartitionResult run_multistart(const Graph& coarse, const Topology& t, double eps,
                                      std::uint32_t tries, std::uint64_t seed, bool optimize_coco) {
  if (tries < 1) throw InputError("multistart requires at least one try");

  std::vector<std::future<InitialPartitionResult>> futures;
  futures.reserve(tries);
  for (std::uint32_t i = 0; i < tries; ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      return initial_partition(coarse, t, eps, seed + i);
    }));
  }

  InitialPartitionResult best;
  CostT best_primary = 0;
  CostT best_secondary = 0;
  bool have = false;
  for (std::uint32_t i = 0; i < tries; ++i) {
    InitialPartitionResult candidate = futures[i].get();
    const CostT candidate_coco = coco(coarse, candidate.mapping, t);
    const CostT candidate_cut = edgecut(coarse, candidate.mapping);
    const CostT primary = optimize_coco ? candidate_coco : candidate_cut;
    const CostT secondary = optimize_coco ? candidate_cut : candidate_coco;
    // seeds ascend, so strict comparison settles the lowest-seed tie rule
    if (!have || primary < best_primary ||
        (primary == best_primary && secondary < best_secondary)) {
      best = std::move(candidate);
      best_primary = primary;
      best_secondary = secondary;
      have = true;
    }
  }
  return best;
}

} // namespace hiermap
