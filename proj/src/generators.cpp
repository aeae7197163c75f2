#include "hiermap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hiermap/rng.hpp"

namespace hiermap {

Graph gen_ba(NodeID n, NodeID attach, std::uint64_t seed) {
  if (attach < 1 || n <= attach) {
    throw InputError("gen_ba requires n > attach >= 1");
  }
  Rng rng(mix_seed(seed, 0xba));

  GraphBuilder builder(n);
  // endpoint pool: each vertex appears once per incident edge, so uniform
  // draws from the pool are degree-proportional
  std::vector<NodeID> pool;
  pool.reserve(2 * (static_cast<std::size_t>(attach) * (n - attach) +
                    static_cast<std::size_t>(attach) * (attach - 1) / 2));

  for (NodeID u = 0; u < attach; ++u) {
    for (NodeID v = u + 1; v < attach; ++v) {
      builder.add_edge(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }

  std::vector<NodeID> picked;
  for (NodeID t = attach; t < n; ++t) {
    picked.clear();
    while (picked.size() < attach) {
      const NodeID target = pool.empty() ? static_cast<NodeID>(rng.next_below(t))
                                         : pool[rng.next_below(pool.size())];
      if (std::find(picked.begin(), picked.end(), target) == picked.end()) {
        picked.push_back(target);
      }
    }
    for (NodeID target : picked) {
      builder.add_edge(t, target);
      pool.push_back(t);
      pool.push_back(target);
    }
  }
  return builder.build();
}

Graph gen_rmat(std::uint32_t scale, std::uint32_t edge_factor, const RmatParams& p, std::uint64_t seed) {
  const double sum = p.a + p.b + p.c + p.d;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InputError("R-MAT probabilities must sum to 1");
  }
  if (scale == 0 || scale > 30) {
    throw InputError("R-MAT scale must be in [1, 30]");
  }
  Rng rng(mix_seed(seed, 0x27a7));

  const NodeID n = NodeID{1} << scale;
  const std::uint64_t attempts = static_cast<std::uint64_t>(edge_factor) << scale;

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(attempts * 2);
  GraphBuilder builder(n);

  for (std::uint64_t i = 0; i < attempts; ++i) {
    NodeID u = 0, v = 0;
    for (std::uint32_t bit = 0; bit < scale; ++bit) {
      const double r = rng.next_double();
      u <<= 1;
      v <<= 1;
      if (r < p.a) {
        // top-left quadrant
      } else if (r < p.a + p.b) {
        v |= 1;
      } else if (r < p.a + p.b + p.c) {
        u |= 1;
      } else {
        u |= 1;
        v |= 1;
      }
    }
    if (u == v) continue;
    const NodeID lo = std::min(u, v), hi = std::max(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
    if (seen.insert(key).second) {
      builder.add_edge(lo, hi);
    }
  }
  return builder.build();
}

LargestCcResult largest_cc(const Graph& g) {
  const NodeID n = g.n();
  std::vector<NodeID> component(n, kInvalidNode);
  std::vector<NodeID> queue;
  NodeID best_root = kInvalidNode;
  std::size_t best_size = 0;
  NodeID num_components = 0;

  for (NodeID s = 0; s < n; ++s) {
    if (component[s] != kInvalidNode) continue;
    const NodeID id = num_components++;
    component[s] = id;
    queue.assign(1, s);
    std::size_t size = 0;
    while (!queue.empty()) {
      const NodeID u = queue.back();
      queue.pop_back();
      ++size;
      for (NodeID v : g.neighbors(u)) {
        if (component[v] == kInvalidNode) {
          component[v] = id;
          queue.push_back(v);
        }
      }
    }
    if (size > best_size) { // first root of equal size wins: lowest min id
      best_size = size;
      best_root = s;
    }
  }

  LargestCcResult result;
  result.old_to_new.assign(n, kInvalidNode);
  if (n == 0) {
    result.graph = GraphBuilder(0).build();
    return result;
  }

  const NodeID keep = component[best_root];
  NodeID next = 0;
  for (NodeID v = 0; v < n; ++v) {
    if (component[v] == keep) result.old_to_new[v] = next++;
  }

  GraphBuilder builder(next);
  for (NodeID u = 0; u < n; ++u) {
    if (component[u] != keep) continue;
    builder.set_vertex_weight(result.old_to_new[u], g.vertex_weight(u));
    auto nbrs = g.neighbors(u);
    auto wgts = g.edge_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u) builder.add_edge(result.old_to_new[u], result.old_to_new[nbrs[i]], wgts[i]);
    }
  }
  result.graph = builder.build();
  return result;
}

} // namespace hiermap
