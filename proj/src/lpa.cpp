#include "hiermap/lpa.hpp"

#include <algorithm>
#include <barrier>
#include <numeric>

#include "hiermap/metrics.hpp"
#include "hiermap/rng.hpp"

namespace hiermap {

namespace {

constexpr std::uint64_t kClusterSalt = 0xc1u;
constexpr std::uint64_t kRefineSalt = 0x4eu;
constexpr std::uint32_t kMaxEscapePhases = 3;

std::vector<NodeID> owned_permutation(const DistGraph& dg, int w) {
  std::vector<NodeID> perm(dg.range_end(w) - dg.range_begin(w));
  std::iota(perm.begin(), perm.end(), dg.range_begin(w));
  return perm;
}

} // namespace

std::vector<NodeID> cluster_coarsen(DistGraph& dg, const LpaParams& p) {
  const Graph& g = dg.graph();
  const NodeID n = g.n();
  const int V = dg.workers();
  const NodeWeight cap = p.weight_cap;
  if (cap < 1) throw InputError("cluster weight cap must be >= 1");

  // singleton start: label == vertex id
  std::vector<BlockID> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  dg.reset_ghost_labels(labels);

  // every worker knows the exact initial weights of its local and ghost labels
  BlockWeights bw = BlockWeights::localized(V);
  for (int w = 0; w < V; ++w) {
    for (NodeID v = dg.range_begin(w); v < dg.range_end(w); ++v) {
      bw.local_add(w, v, g.vertex_weight(v));
    }
    for (NodeID u : dg.ghosts(w)) {
      bw.local_add(w, u, g.vertex_weight(u));
    }
  }

  std::barrier barrier(V);
  run_workers(V, [&](int w) {
    std::vector<NodeID> perm = owned_permutation(dg, w);
    std::vector<std::pair<BlockID, EdgeWeight>> conn;
    std::vector<AppliedUpdate> applied;

    for (std::uint32_t iter = 0; iter < p.iterations; ++iter) {
      Rng rng(mix_seed(p.seed, static_cast<std::uint64_t>(w), iter, kClusterSalt));
      rng.shuffle(perm);

      for (NodeID v : perm) {
        auto nbrs = g.neighbors(v);
        if (nbrs.empty()) continue;
        auto wgts = g.edge_weights(v);

        conn.clear();
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
          conn.emplace_back(dg.neighbor_label(w, nbrs[i], labels), wgts[i]);
        }
        std::sort(conn.begin(), conn.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < conn.size(); ++i) {
          if (out > 0 && conn[out - 1].first == conn[i].first) {
            conn[out - 1].second += conn[i].second;
          } else {
            conn[out++] = conn[i];
          }
        }
        conn.resize(out);

        const BlockID cur = labels[v];
        EdgeWeight cur_weight = 0;
        for (const auto& [label, weight] : conn) {
          if (label == cur) {
            cur_weight = weight;
            break;
          }
        }

        // strongest adjacent label that can still host v; ties stay, then
        // lowest id (ascending scan with strict improvement)
        BlockID best = cur;
        EdgeWeight best_weight = cur_weight;
        const NodeWeight vw = g.vertex_weight(v);
        for (const auto& [label, weight] : conn) {
          if (label == cur || weight <= best_weight) continue;
          if (bw.local_weight(w, label) + vw > cap) continue;
          best = label;
          best_weight = weight;
        }

        if (best != cur) {
          bw.local_add(w, cur, -vw);
          bw.local_add(w, best, vw);
          labels[v] = best;
          dg.record_change(w, v, best);
        }
      }

      if (iter + 1 < p.iterations) {
        barrier.arrive_and_wait();
        applied.clear();
        dg.exchange_for(w, applied);
        for (const AppliedUpdate& u : applied) {
          const NodeWeight uw = g.vertex_weight(u.vertex);
          bw.local_add(w, u.old_label, -uw);
          bw.local_add(w, u.new_label, uw);
        }
        barrier.arrive_and_wait();
      }
    }
  });

  // enforce the cap globally: localized views cannot rule out concurrent
  // admissions into the same label, so recount and evict the overflow into
  // fresh singletons (deterministic: members in ascending id order)
  std::vector<NodeWeight> weight(n, 0);
  for (NodeID v = 0; v < n; ++v) weight[labels[v]] += g.vertex_weight(v);
  std::vector<NodeID> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeID a, NodeID b) { return labels[a] < labels[b]; });
  std::size_t i = 0;
  while (i < order.size()) {
    const BlockID label = labels[order[i]];
    std::size_t j = i;
    while (j < order.size() && labels[order[j]] == label) ++j;
    if (weight[label] > cap) {
      NodeWeight acc = 0;
      for (std::size_t s = i; s < j; ++s) {
        const NodeID v = order[s];
        if (acc + g.vertex_weight(v) <= cap) {
          acc += g.vertex_weight(v);
        } else {
          labels[v] = n + v; // fresh singleton
        }
      }
    }
    i = j;
  }

  // contiguous renumbering by first appearance
  std::vector<NodeID> remap(2 * static_cast<std::size_t>(n), kInvalidNode);
  std::vector<NodeID> cluster(n);
  NodeID next = 0;
  for (NodeID v = 0; v < n; ++v) {
    NodeID& slot = remap[labels[v]];
    if (slot == kInvalidNode) slot = next++;
    cluster[v] = slot;
  }
  return cluster;
}

CostT assignment_cost(const Graph& g, NodeID v, BlockID b, std::span<const BlockID> labels,
                      const Topology& t) {
  const PELabel lb = t.pe_label(b);
  CostT cost = 0;
  auto nbrs = g.neighbors(v);
  auto wgts = g.edge_weights(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    cost += wgts[i] * t.distance(lb, t.pe_label(labels[nbrs[i]]));
  }
  return cost;
}

Mapping refine_map(DistGraph& dg, const Mapping& m, const Topology& t, const LpaParams& p,
                   double eps, Objective objective, RefineStats* stats) {
  const Graph& g = dg.graph();
  const NodeID n = g.n();
  const int V = dg.workers();
  const BlockID k = t.num_pes();
  if (m.k != k) throw InputError("mapping block count does not match the topology");
  if (m.n() != n) throw InputError("mapping size does not match the graph");

  std::vector<BlockID> labels = m.block;
  dg.reset_ghost_labels(labels);

  const NodeWeight cap = block_weight_cap(g.total_vertex_weight(), k, eps);
  BlockWeights bw = BlockWeights::exact(block_weights(g, m, k), V);

  // block -> PE label table, and the distance kernel per objective
  const std::vector<PELabel>& pe = t.labels();
  const auto dist = [&](BlockID a, BlockID b) -> CostT {
    if (objective == Objective::edgecut) return a == b ? 0 : 1;
    return t.distance(pe[a], pe[b]);
  };

  struct Control {
    bool done = false;
    bool escape = false;
    std::uint32_t phases_run = 0;
    std::uint32_t extra = 0;
  } ctrl;
  std::vector<std::uint8_t> overloaded(k, 0);
  const auto detect_overload = [&]() {
    bool any = false;
    for (BlockID b = 0; b < k; ++b) {
      overloaded[b] = bw.shared_total(b) > cap ? 1 : 0;
      any |= overloaded[b] != 0;
    }
    return any;
  };
  ctrl.escape = detect_overload();
  ctrl.done = p.iterations == 0;

  std::vector<std::uint32_t> moves_per_worker(V, 0);
  std::barrier barrier(V);

  run_workers(V, [&](int w) {
    std::vector<NodeID> perm = owned_permutation(dg, w);
    std::vector<EdgeWeight> conn(k, 0);
    std::vector<BlockID> touched;
    std::vector<AppliedUpdate> applied;

    for (std::uint32_t phase = 0; !ctrl.done; ++phase) {
      const bool escape = ctrl.escape;
      Rng rng(mix_seed(p.seed, static_cast<std::uint64_t>(w), phase, kRefineSalt));
      rng.shuffle(perm);

      for (NodeID v : perm) {
        auto nbrs = g.neighbors(v);
        if (nbrs.empty()) continue;
        auto wgts = g.edge_weights(v);

        touched.clear();
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
          const BlockID b = dg.neighbor_label(w, nbrs[i], labels);
          if (conn[b] == 0) touched.push_back(b);
          conn[b] += wgts[i];
        }
        std::sort(touched.begin(), touched.end());

        const BlockID cur = labels[v];
        const NodeWeight vw = g.vertex_weight(v);
        const auto cost_of = [&](BlockID b) {
          CostT c = 0;
          for (BlockID other : touched) c += conn[other] * dist(b, other);
          return c;
        };
        const CostT cur_cost = cost_of(cur);

        BlockID best = cur;
        CostT best_cost = cur_cost;
        NodeWeight best_resulting = 0; // escape tie-break only
        const bool escaping = escape && overloaded[cur];
        for (BlockID b : touched) {
          if (b == cur) continue;
          if (bw.view(w, b) + vw > cap) continue;
          const CostT c = cost_of(b);
          if (c < best_cost) {
            best = b;
            best_cost = c;
            best_resulting = bw.view(w, b) + vw;
          } else if (escaping && c == best_cost &&
                     (best == cur || bw.view(w, b) + vw < best_resulting)) {
            best = b;
            best_cost = c;
            best_resulting = bw.view(w, b) + vw;
          }
        }

        if (best != cur) {
          bw.apply_move(w, cur, best, vw);
          labels[v] = best;
          dg.record_change(w, v, best);
          ++moves_per_worker[w];
        }

        for (BlockID b : touched) conn[b] = 0;
      }

      barrier.arrive_and_wait();
      applied.clear();
      dg.exchange_for(w, applied);
      barrier.arrive_and_wait();

      if (w == 0) {
        bw.sync();
        ++ctrl.phases_run;
        const bool any_overload = detect_overload();
        if (stats != nullptr) {
          Mapping snapshot{labels, k};
          stats->phase_objective.push_back(objective == Objective::coco ? coco(g, snapshot, t)
                                                                        : edgecut(g, snapshot));
        }
        ctrl.escape = any_overload;
        bool done = ctrl.phases_run >= p.iterations;
        if (done && any_overload && ctrl.extra < kMaxEscapePhases) {
          ++ctrl.extra;
          done = false;
        }
        ctrl.done = done;
      }
      barrier.arrive_and_wait();
    }
  });

  if (stats != nullptr) {
    stats->moves = std::accumulate(moves_per_worker.begin(), moves_per_worker.end(), 0u);
    stats->extra_phases = ctrl.extra;
  }
  return Mapping{std::move(labels), k};
}

} // namespace hiermap
