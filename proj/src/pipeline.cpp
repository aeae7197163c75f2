#include "hiermap/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "hiermap/contraction.hpp"
#include "hiermap/dist_graph.hpp"
#include "hiermap/initial_partition.hpp"
#include "hiermap/metrics.hpp"
#include "hiermap/rng.hpp"

namespace hiermap {

namespace {

class StageTimer {
public:
  StageTimer() : start_(clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

NodeWeight cluster_cap(NodeWeight total_weight, BlockID k, double eps) {
  // coarse vertices must stay small relative to the block target, otherwise
  // the initial partition cannot honor the balance tolerance
  const NodeWeight target = (total_weight + k - 1) / k;
  const auto cap = static_cast<NodeWeight>(eps * static_cast<double>(target));
  return std::max<NodeWeight>(1, cap);
}

} // namespace

void PipelineConfig::validate() const {
  if (eps < 0) throw InputError("imbalance tolerance must be >= 0");
  if (workers < 1) throw InputError("worker count must be >= 1");
  if (coarsen_iterations == 0) throw InputError("coarsening iteration count must be positive");
  if (refine_rounds == 0) throw InputError("refinement round count must be positive");
}

HubReduction reduce_halo_hubs(const Graph& g, int workers, EdgeID degree_threshold) {
  if (degree_threshold < 1) throw InputError("hub degree threshold must be >= 1");
  const NodeID n = g.n();
  std::vector<NodeID> range(workers + 1);
  for (int w = 0; w <= workers; ++w) {
    range[w] = static_cast<NodeID>(static_cast<std::uint64_t>(w) * n / workers);
  }
  const auto owner_of = [&](NodeID v) {
    int w = static_cast<int>((static_cast<std::uint64_t>(v) * workers) / n);
    while (v < range[w]) --w;
    while (v >= range[w + 1]) ++w;
    return w;
  };

  std::vector<std::uint8_t> hub(n, 0);
  for (NodeID v = 0; v < n; ++v) hub[v] = g.degree(v) > degree_threshold ? 1 : 0;

  HubReduction result;
  GraphBuilder builder(n);
  for (NodeID u = 0; u < n; ++u) {
    builder.set_vertex_weight(u, g.vertex_weight(u));
    const int owner_u = owner_of(u);
    auto nbrs = g.neighbors(u);
    auto wgts = g.edge_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeID v = nbrs[i];
      if (v <= u) continue;
      if ((hub[u] || hub[v]) && owner_u != owner_of(v)) {
        result.removed.push_back({u, v, wgts[i]});
      } else {
        builder.add_edge(u, v, wgts[i]);
      }
    }
  }
  result.graph = builder.build();
  return result;
}

Graph reintroduce_edges(const Graph& reduced, const std::vector<RemovedEdge>& removed) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(removed.size() * 2);

  GraphBuilder builder(reduced.n());
  for (NodeID u = 0; u < reduced.n(); ++u) {
    builder.set_vertex_weight(u, reduced.vertex_weight(u));
    auto nbrs = reduced.neighbors(u);
    auto wgts = reduced.edge_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u) builder.add_edge(u, nbrs[i], wgts[i]);
    }
  }
  for (const RemovedEdge& e : removed) {
    if (e.u >= e.v || e.v >= reduced.n()) {
      throw InputError("removed-edge list entry is not a valid canonical edge");
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    if (!seen.insert(key).second) {
      throw InputError("removed-edge list contains edge " + std::to_string(e.u) + "-" +
                       std::to_string(e.v) + " twice");
    }
    auto nbrs = reduced.neighbors(e.u);
    if (std::binary_search(nbrs.begin(), nbrs.end(), e.v)) {
      throw InputError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                       " to re-introduce is already present");
    }
    builder.add_edge(e.u, e.v, e.weight);
  }
  return builder.build();
}

MapResult map_graph(const Graph& g, const Topology& t, const PipelineConfig& cfg) {
  cfg.validate();
  const BlockID k = t.num_pes();
  const NodeID n = g.n();
  if (n < k) {
    throw InputError("graph has " + std::to_string(n) + " vertices but the hierarchy needs " +
                     std::to_string(k));
  }
  if (static_cast<NodeID>(cfg.workers) > n) {
    throw InputError("worker count exceeds vertex count");
  }

  StageTimer total_timer;
  MapResult result;
  RunReport& report = result.report;
  report.k = k;
  report.n = n;
  report.m = g.m();
  report.seed = cfg.seed;
  report.workers = cfg.workers;

  if (k == 1) {
    result.mapping = Mapping{std::vector<BlockID>(n, 0), 1};
    report.imbalance = imbalance(g, result.mapping, 1);
    report.time.total_ms = total_timer.elapsed_ms();
    return result;
  }

  // (1) halo-hub reduction on the input graph
  Graph reduced;
  std::vector<RemovedEdge> removed;
  const Graph* work = &g;
  {
    StageTimer timer;
    if (cfg.preprocessing && cfg.workers > 1) {
      EdgeID threshold = cfg.hub_threshold;
      if (threshold == 0) {
        const double avg_degree = n > 0 ? 2.0 * static_cast<double>(g.m()) / n : 0.0;
        threshold = static_cast<EdgeID>(std::max(64.0 * avg_degree, 256.0));
      }
      HubReduction reduction = reduce_halo_hubs(g, cfg.workers, threshold);
      removed = std::move(reduction.removed);
      if (!removed.empty()) {
        reduced = std::move(reduction.graph);
        work = &reduced;
      }
      report.removed_edges = removed.size();
    }
    report.time.preprocess_ms = timer.elapsed_ms();
  }

  // (2) coarsen until small enough or the reduction per level stalls
  const NodeID stop = cfg.stop_threshold != 0
                          ? cfg.stop_threshold
                          : static_cast<NodeID>(std::max<std::uint64_t>(30ull * k, 3000));
  struct Level {
    Graph graph;
    std::vector<NodeID> projection; // next-finer vertex -> this graph's vertex
  };
  std::vector<Level> levels;
  const NodeWeight cap = cluster_cap(work->total_vertex_weight(), k, cfg.eps);
  {
    StageTimer timer;
    const Graph* current = work;
    while (current->n() > stop) {
      DistGraph dg = DistGraph::build(*current, cfg.workers);
      LpaParams params;
      params.iterations = cfg.coarsen_iterations;
      params.weight_cap = cap;
      params.seed = mix_seed(cfg.seed, 0xc0a5, levels.size());
      std::vector<NodeID> cluster = cluster_coarsen(dg, params);
      ContractionResult contracted = contract(*current, cluster);
      if (contracted.coarse.n() > static_cast<NodeID>(0.95 * current->n())) {
        break; // < 5% reduction, not worth another level
      }
      levels.push_back({std::move(contracted.coarse), std::move(contracted.projection)});
      current = &levels.back().graph;
    }
    report.levels = static_cast<std::uint32_t>(levels.size());
    report.time.coarsen_ms = timer.elapsed_ms();
  }
  const Graph& coarsest = levels.empty() ? *work : levels.back().graph;

  // (3) gather is a no-op in-process; partition with one try per worker
  Mapping mapping;
  {
    StageTimer timer;
    InitialPartitionResult initial =
        run_multistart(coarsest, t, cfg.eps, static_cast<std::uint32_t>(cfg.workers),
                       mix_seed(cfg.seed, 0x1417), cfg.objective == Objective::coco);
    mapping = std::move(initial.mapping);
    report.feasible = initial.feasible;
    report.time.initial_ms = timer.elapsed_ms();
  }

  // (4) uncoarsen with refinement on every level
  {
    StageTimer timer;
    LpaParams params;
    params.iterations = cfg.refine_rounds;
    for (std::size_t i = levels.size(); i-- > 0;) {
      const Graph& finer = i == 0 ? *work : levels[i - 1].graph;
      std::vector<BlockID> projected(finer.n());
      for (NodeID v = 0; v < finer.n(); ++v) projected[v] = mapping.block[levels[i].projection[v]];
      mapping = Mapping{std::move(projected), k};

      DistGraph dg = DistGraph::build(finer, cfg.workers);
      params.seed = mix_seed(cfg.seed, 0x4ef1, i);
      RefineStats stats;
      mapping = refine_map(dg, mapping, t, params, cfg.eps, cfg.objective, &stats);
      report.refine_objective_trace.insert(report.refine_objective_trace.end(),
                                           stats.phase_objective.begin(), stats.phase_objective.end());
    }
    if (levels.empty()) {
      // no coarsening happened: refine the initial solution directly
      DistGraph dg = DistGraph::build(*work, cfg.workers);
      params.seed = mix_seed(cfg.seed, 0x4ef1, 0xffff);
      RefineStats stats;
      mapping = refine_map(dg, mapping, t, params, cfg.eps, cfg.objective, &stats);
      report.refine_objective_trace.insert(report.refine_objective_trace.end(),
                                           stats.phase_objective.begin(), stats.phase_objective.end());
    }
    report.time.refine_ms = timer.elapsed_ms();
  }

  // (5) re-introduce removed edges, (6) post-refinement on the original graph
  {
    StageTimer timer;
    if (work != &g) {
      Graph restored = reintroduce_edges(*work, removed);
      if (!(restored == g)) {
        throw std::runtime_error("halo-hub round-trip failed to restore the input graph");
      }
    }
    if (cfg.post_rounds > 0) {
      DistGraph dg = DistGraph::build(g, cfg.workers);
      LpaParams params;
      params.iterations = cfg.post_rounds;
      params.seed = mix_seed(cfg.seed, 0x9057);
      RefineStats stats;
      mapping = refine_map(dg, mapping, t, params, cfg.eps, cfg.objective, &stats);
      report.refine_objective_trace.insert(report.refine_objective_trace.end(),
                                           stats.phase_objective.begin(), stats.phase_objective.end());
    }
    report.time.post_ms = timer.elapsed_ms();
  }

  report.coco = coco(g, mapping, t);
  report.edgecut = edgecut(g, mapping);
  report.imbalance = imbalance(g, mapping, k);
  report.time.total_ms = total_timer.elapsed_ms();
  result.mapping = std::move(mapping);
  return result;
}

} // namespace hiermap
