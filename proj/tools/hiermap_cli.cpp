#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hiermap/generators.hpp"
#include "hiermap/graph_io.hpp"
#include "hiermap/metrics.hpp"
#include "hiermap/pipeline.hpp"
#include "hiermap/topology.hpp"

namespace {

using hiermap::InputError;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

hiermap::Topology topology_from_flags(const std::string& hierarchy, const std::string& distances) {
  hiermap::HierarchySpec spec;
  spec.children = hiermap::parse_hierarchy_string(hierarchy);
  spec.distances = hiermap::parse_distance_string(distances);
  return hiermap::Topology::build(std::move(spec));
}

void print_report(const hiermap::RunReport& r, const std::string& format) {
  if (format == "json") {
    ordered_json j;
    j["coco"] = r.coco;
    j["edgecut"] = r.edgecut;
    j["imbalance"] = r.imbalance;
    j["k"] = r.k;
    j["n"] = r.n;
    j["m"] = r.m;
    j["levels"] = r.levels;
    j["time_ms"] = ordered_json{{"total", r.time.total_ms},
                                {"preprocess", r.time.preprocess_ms},
                                {"coarsen", r.time.coarsen_ms},
                                {"initial", r.time.initial_ms},
                                {"refine", r.time.refine_ms},
                                {"post", r.time.post_ms}};
    j["seed"] = r.seed;
    j["workers"] = r.workers;
    j["feasible"] = r.feasible;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "coco\t" << r.coco << "\n"
              << "edgecut\t" << r.edgecut << "\n"
              << "imbalance\t" << r.imbalance << "\n"
              << "k\t" << r.k << "\n"
              << "n\t" << r.n << "\n"
              << "m\t" << r.m << "\n"
              << "levels\t" << r.levels << "\n"
              << "time_ms.total\t" << r.time.total_ms << "\n"
              << "time_ms.preprocess\t" << r.time.preprocess_ms << "\n"
              << "time_ms.coarsen\t" << r.time.coarsen_ms << "\n"
              << "time_ms.initial\t" << r.time.initial_ms << "\n"
              << "time_ms.refine\t" << r.time.refine_ms << "\n"
              << "time_ms.post\t" << r.time.post_ms << "\n"
              << "seed\t" << r.seed << "\n"
              << "workers\t" << r.workers << "\n"
              << "feasible\t" << (r.feasible ? "true" : "false") << "\n";
  }
}

int run_map(const std::string& graph_path, const std::string& hierarchy, const std::string& distances,
            const std::string& output, const std::string& report_format, hiermap::PipelineConfig cfg) {
  const hiermap::Topology topo = topology_from_flags(hierarchy, distances);
  const hiermap::Graph g = hiermap::load_metis(graph_path, &std::cerr);
  hiermap::MapResult result = hiermap::map_graph(g, topo, cfg);
  hiermap::write_mapping(output, result.mapping);
  print_report(result.report, report_format);
  return kExitOk;
}

int run_eval(const std::string& graph_path, const std::string& mapping_path,
             const std::string& hierarchy, const std::string& distances,
             const std::string& report_format) {
  const hiermap::Topology topo = topology_from_flags(hierarchy, distances);
  const hiermap::Graph g = hiermap::load_metis(graph_path, &std::cerr);
  const hiermap::Mapping m = hiermap::load_mapping(mapping_path, g.n(), topo.num_pes());
  const hiermap::CostT coco = hiermap::coco(g, m, topo);
  const hiermap::EdgeWeight cut = hiermap::edgecut(g, m);
  const double imb = hiermap::imbalance(g, m, topo.num_pes());
  if (report_format == "json") {
    ordered_json j;
    j["coco"] = coco;
    j["edgecut"] = cut;
    j["imbalance"] = imb;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "coco\t" << coco << "\n"
              << "edgecut\t" << cut << "\n"
              << "imbalance\t" << imb << "\n";
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"hiermap: maps application graphs onto hierarchical machine topologies"};
  app.require_subcommand(1);

  // map ----------------------------------------------------------------
  auto* map_cmd = app.add_subcommand("map", "partition and map a graph onto the PE hierarchy");
  std::string graph_path, hierarchy, distances, output, report_format = "json";
  hiermap::PipelineConfig cfg;
  std::string objective = "coco";
  bool no_preprocessing = false;
  std::uint64_t hub_threshold = 0;
  map_cmd->add_option("--graph", graph_path, "input graph (METIS format)")->required();
  map_cmd->add_option("--hierarchy", hierarchy, "children per level, bottom-up, e.g. 4:2:5:4")->required();
  map_cmd->add_option("--distances", distances, "distance per level, same length, e.g. 1:10:100:1000")->required();
  map_cmd->add_option("--epsilon", cfg.eps, "imbalance tolerance")->default_val(0.03);
  map_cmd->add_option("--workers", cfg.workers, "virtual PE count")->default_val(1);
  map_cmd->add_option("--seed", cfg.seed, "random seed")->default_val(0);
  map_cmd->add_option("--coarsen-iters", cfg.coarsen_iterations, "clustering sweeps per level")->default_val(5);
  map_cmd->add_option("--refine-rounds", cfg.refine_rounds, "refinement phases per level")->default_val(3);
  map_cmd->add_option("--post-rounds", cfg.post_rounds, "refinement phases on the original graph")->default_val(2);
  map_cmd->add_option("--hub-threshold", hub_threshold, "halo hub degree threshold, 0 = auto")->default_val(0);
  map_cmd->add_flag("--no-preprocessing", no_preprocessing, "skip halo-hub edge removal");
  map_cmd->add_option("--objective", objective, "optimization objective")
      ->check(CLI::IsMember({"coco", "edgecut"}))
      ->default_val("coco");
  map_cmd->add_option("--output", output, "mapping output file")->required();
  map_cmd->add_option("--report", report_format, "report format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->default_val("json");

  // eval ---------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an existing mapping");
  std::string eval_graph, eval_mapping, eval_hierarchy, eval_distances, eval_report = "json";
  eval_cmd->add_option("--graph", eval_graph, "input graph (METIS format)")->required();
  eval_cmd->add_option("--mapping", eval_mapping, "mapping file")->required();
  eval_cmd->add_option("--hierarchy", eval_hierarchy, "children per level, bottom-up")->required();
  eval_cmd->add_option("--distances", eval_distances, "distance per level")->required();
  eval_cmd->add_option("--report", eval_report, "report format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->default_val("json");

  // gen ----------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic benchmark graph");
  std::string gen_type, gen_output;
  std::uint64_t gen_seed = 0;
  std::uint32_t gen_n = 0, gen_degree = 8, gen_scale = 0, gen_factor = 16;
  std::string gen_probs;
  bool gen_lcc = false;
  gen_cmd->add_option("--type", gen_type, "generator family")
      ->check(CLI::IsMember({"ba", "rmat"}))
      ->required();
  gen_cmd->add_option("--n", gen_n, "vertex count (ba)");
  gen_cmd->add_option("--degree", gen_degree, "attachment degree (ba)")->default_val(8);
  gen_cmd->add_option("--scale", gen_scale, "log2 of the vertex count (rmat)");
  gen_cmd->add_option("--factor", gen_factor, "edges sampled per vertex (rmat)")->default_val(16);
  gen_cmd->add_option("--probs", gen_probs, "rmat quadrant probabilities a:b:c:d");
  gen_cmd->add_option("--seed", gen_seed, "random seed")->default_val(0);
  gen_cmd->add_flag("--lcc", gen_lcc, "keep only the largest connected component");
  gen_cmd->add_option("--output", gen_output, "METIS output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*map_cmd) {
      cfg.preprocessing = !no_preprocessing;
      cfg.hub_threshold = hub_threshold;
      cfg.objective = objective == "coco" ? hiermap::Objective::coco : hiermap::Objective::edgecut;
      return run_map(graph_path, hierarchy, distances, output, report_format, cfg);
    }
    if (*eval_cmd) {
      return run_eval(eval_graph, eval_mapping, eval_hierarchy, eval_distances, eval_report);
    }
    if (*gen_cmd) {
      hiermap::Graph g;
      if (gen_type == "ba") {
        if (gen_n == 0) throw InputError("--n is required for --type ba");
        g = hiermap::gen_ba(gen_n, gen_degree, gen_seed);
      } else {
        if (gen_scale == 0) throw InputError("--scale is required for --type rmat");
        hiermap::RmatParams params;
        if (!gen_probs.empty()) {
          double p[4];
          std::size_t pos = 0;
          for (int i = 0; i < 4; ++i) {
            const std::size_t next = i < 3 ? gen_probs.find(':', pos) : gen_probs.size();
            if (next == std::string::npos) {
              throw InputError("--probs must be four decimals, e.g. 0.57:0.19:0.19:0.05");
            }
            try {
              std::size_t used = 0;
              p[i] = std::stod(gen_probs.substr(pos, next - pos), &used);
              if (used != next - pos) throw std::invalid_argument("");
            } catch (const std::exception&) {
              throw InputError("--probs must be four decimals, e.g. 0.57:0.19:0.19:0.05");
            }
            pos = next + 1;
          }
          params = hiermap::RmatParams{p[0], p[1], p[2], p[3]};
        }
        g = hiermap::gen_rmat(gen_scale, gen_factor, params, gen_seed);
      }
      if (gen_lcc) {
        g = hiermap::largest_cc(g).graph;
      }
      hiermap::save_metis(gen_output, g);
      ordered_json j;
      j["n"] = g.n();
      j["m"] = g.m();
      j["type"] = gen_type;
      j["seed"] = gen_seed;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
