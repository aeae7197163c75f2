#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hiermap/contraction.hpp"
#include "hiermap/graph_io.hpp"
#include "hiermap/metrics.hpp"
#include "test_support.hpp"

using namespace hiermap;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return read_metis(in);
}

Graph triangle() {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(0, 2);
  return b.build();
}

} // namespace

TEST_CASE("metis: unweighted triangle") {
  const Graph g = parse("3 3\n2 3\n1 3\n1 2\n");
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g == triangle());
  CHECK(g.has_uniform_edge_weights());
  CHECK(g.has_uniform_vertex_weights());
}

TEST_CASE("metis: edge-weighted path (fmt 1)") {
  const Graph g = parse("3 2 1\n2 5\n1 5 3 1\n2 1\n");
  CHECK(g.n() == 3);
  CHECK(g.m() == 2);
  CHECK(g.edge_weights(0)[0] == 5);
  CHECK(g.neighbors(1).size() == 2);
  CHECK(g.edge_weights(1)[0] == 5);
  CHECK(g.edge_weights(1)[1] == 1);
}

TEST_CASE("metis: single edge, comments, vertex weights") {
  const Graph g = parse("% comment line\n2 1\n2\n1\n");
  CHECK(g.n() == 2);
  CHECK(g.m() == 1);

  const Graph w = parse("2 1 10\n7 2\n3 1\n");
  CHECK(w.vertex_weight(0) == 7);
  CHECK(w.vertex_weight(1) == 3);
}

TEST_CASE("metis: malformed inputs name the line") {
  // asymmetric adjacency
  CHECK_THROWS_WITH_AS(parse("2 1\n2\n\n"), doctest::Contains("claims 1 edges"), InputError);
  CHECK_THROWS_WITH_AS(parse("3 2\n2 3\n1\n\n"), doctest::Contains("line 4"), InputError);
  // asymmetric weights
  CHECK_THROWS_WITH_AS(parse("2 1 1\n2 5\n1 4\n"), doctest::Contains("asymmetric"), InputError);
  // index out of range
  CHECK_THROWS_WITH_AS(parse("2 1\n3\n1\n"), doctest::Contains("out of range"), InputError);
  // self loop
  CHECK_THROWS_AS(parse("2 1\n1\n2\n"), InputError);
  // missing weight with fmt=1
  CHECK_THROWS_AS(parse("2 1 1\n2\n1 1\n"), InputError);
  // bad header
  CHECK_THROWS_AS(parse("x y\n"), InputError);
  CHECK_THROWS_AS(parse("2 1 7\n2\n1\n"), InputError);
}

TEST_CASE("metis: parallel edges merge with a warning") {
  std::ostringstream warnings;
  std::istringstream in("2 2\n2 2\n1 1\n");
  const Graph g = read_metis(in, &warnings);
  CHECK(g.m() == 1);
  CHECK(g.edge_weights(0)[0] == 2);
  CHECK(warnings.str().find("merged") != std::string::npos);
}

TEST_CASE("metis: write then load is the identity") {
  Rng rng(0x90a7);
  for (int trial = 0; trial < 20; ++trial) {
    const NodeID n = 2 + static_cast<NodeID>(rng.next_below(40));
    const Graph g = testing::random_graph(rng, n, 0.2, trial % 2 ? 9 : 1, trial % 3 ? 4 : 1);
    std::ostringstream out;
    write_metis(out, g);
    std::istringstream in(out.str());
    const Graph back = read_metis(in);
    REQUIRE(back == g);
  }
}

TEST_CASE("mapping files round-trip") {
  const Mapping m{{0, 1, 0}, 2};
  const std::string path = "test_mapping_roundtrip.tmp";
  write_mapping(path, m);
  {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "0\n1\n0\n");
  }
  const Mapping back = load_mapping(path, 3, 2);
  CHECK(back.block == m.block);

  Rng rng(0xfeed);
  const Mapping random = testing::random_mapping(rng, 100, 7);
  write_mapping(path, random);
  CHECK(load_mapping(path, 100, 7).block == random.block);

  CHECK_THROWS_AS(load_mapping(path, 99, 7), InputError);  // wrong n
  CHECK_THROWS_AS(load_mapping(path, 100, 2), InputError); // block >= k

  write_mapping(path, Mapping{{}, 1});
  CHECK(load_mapping(path, 0, 1).block.empty());
  std::remove(path.c_str());
}

TEST_CASE("contract: identity clustering keeps the graph") {
  const Graph g = triangle();
  const auto r = contract(g, {0, 1, 2});
  CHECK(r.coarse == g);
  CHECK(r.projection == std::vector<NodeID>{0, 1, 2});
}

TEST_CASE("contract: triangle into two clusters") {
  const auto r = contract(triangle(), {0, 0, 1});
  CHECK(r.coarse.n() == 2);
  CHECK(r.coarse.m() == 1);
  CHECK(r.coarse.vertex_weight(0) == 2);
  CHECK(r.coarse.vertex_weight(1) == 1);
  CHECK(r.coarse.edge_weights(0)[0] == 2);
}

TEST_CASE("contract: everything into one cluster") {
  const auto r = contract(triangle(), {5, 5, 5}); // ids need not be contiguous
  CHECK(r.coarse.n() == 1);
  CHECK(r.coarse.m() == 0);
  CHECK(r.coarse.vertex_weight(0) == 3);
}

TEST_CASE("contract conserves weight and preserves cluster-constant metrics") {
  Rng rng(0xc0de);
  const Topology t = Topology::build(testing::random_hierarchy(rng, 3, 4, 64));
  for (int trial = 0; trial < 30; ++trial) {
    const NodeID n = 4 + static_cast<NodeID>(rng.next_below(60));
    const Graph g = testing::random_graph(rng, n, 0.15, 5, 3);
    std::vector<NodeID> cluster(n);
    const NodeID groups = 1 + static_cast<NodeID>(rng.next_below(n));
    for (NodeID v = 0; v < n; ++v) cluster[v] = static_cast<NodeID>(rng.next_below(groups));
    const auto r = contract(g, cluster);

    REQUIRE(r.coarse.total_vertex_weight() == g.total_vertex_weight());

    EdgeWeight crossing = 0;
    for (NodeID u = 0; u < n; ++u) {
      auto nbrs = g.neighbors(u);
      auto wgts = g.edge_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (nbrs[i] > u && r.projection[u] != r.projection[nbrs[i]]) crossing += wgts[i];
      }
    }
    REQUIRE(r.coarse.total_edge_weight() == crossing);

    // a mapping constant within clusters scores identically on both graphs
    const BlockID k = t.num_pes();
    Mapping coarse_m = testing::random_mapping(rng, r.coarse.n(), k);
    Mapping fine_m{std::vector<BlockID>(n), k};
    for (NodeID v = 0; v < n; ++v) fine_m.block[v] = coarse_m.block[r.projection[v]];
    REQUIRE(edgecut(g, fine_m) == edgecut(r.coarse, coarse_m));
    REQUIRE(coco(g, fine_m, t) == coco(r.coarse, coarse_m, t));
  }
}
