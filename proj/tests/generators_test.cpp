#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hiermap/generators.hpp"
#include "test_support.hpp"

using namespace hiermap;

namespace {

void check_canonical(const Graph& g) {
  for (NodeID u = 0; u < g.n(); ++u) {
    auto nbrs = g.neighbors(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      REQUIRE(nbrs[i] != u);
      if (i > 0) REQUIRE(nbrs[i - 1] < nbrs[i]);
      // reverse edge with equal weight
      auto other = g.neighbors(nbrs[i]);
      auto it = std::lower_bound(other.begin(), other.end(), u);
      REQUIRE(it != other.end());
      REQUIRE(*it == u);
      REQUIRE(g.edge_weights(nbrs[i])[it - other.begin()] == g.edge_weights(u)[i]);
    }
  }
}

bool connected(const Graph& g) {
  if (g.n() == 0) return true;
  std::vector<bool> seen(g.n(), false);
  std::vector<NodeID> stack{0};
  seen[0] = true;
  NodeID count = 0;
  while (!stack.empty()) {
    const NodeID u = stack.back();
    stack.pop_back();
    ++count;
    for (NodeID v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return count == g.n();
}

} // namespace

TEST_CASE("ba: smallest case is a clique") {
  const Graph g = gen_ba(4, 3, 1);
  CHECK(g.n() == 4);
  CHECK(g.m() == 6);
  for (NodeID v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("ba: edge count formula and determinism") {
  const Graph g = gen_ba(100, 2, 42);
  CHECK(g.m() == 197); // 2 * 98 + 1
  CHECK(connected(g));
  check_canonical(g);
  CHECK(gen_ba(100, 2, 42) == g);
  CHECK(!(gen_ba(100, 2, 43) == g));

  CHECK_THROWS_AS(gen_ba(5, 5, 0), InputError);
  CHECK_THROWS_AS(gen_ba(5, 0, 0), InputError);
}

TEST_CASE("ba: degree distribution grows hubs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_ba(10000, 4, seed);
    EdgeID max_degree = 0;
    for (NodeID v = 0; v < g.n(); ++v) max_degree = std::max(max_degree, g.degree(v));
    REQUIRE(max_degree > 16); // heavy tail: far above the attachment degree
  }
}

TEST_CASE("rmat: bounds, determinism, validation") {
  const Graph g = gen_rmat(4, 8, RmatParams{}, 7);
  CHECK(g.n() <= 16);
  CHECK(g.m() <= 128);
  check_canonical(g);
  CHECK(gen_rmat(4, 8, RmatParams{}, 7) == g);

  CHECK_THROWS_AS(gen_rmat(4, 8, RmatParams{0.5, 0.5, 0.5, 0.5}, 0), InputError);
}

TEST_CASE("rmat: uniform quadrants look like a Poisson degree profile") {
  const Graph g = gen_rmat(12, 8, RmatParams{0.25, 0.25, 0.25, 0.25}, 3);
  check_canonical(g);
  double mean = 0;
  for (NodeID v = 0; v < g.n(); ++v) mean += static_cast<double>(g.degree(v));
  mean /= g.n();
  double var = 0;
  for (NodeID v = 0; v < g.n(); ++v) {
    const double d = static_cast<double>(g.degree(v)) - mean;
    var += d * d;
  }
  var /= g.n();
  CHECK(var / mean > 0.5);
  CHECK(var / mean < 2.0);
}

TEST_CASE("largest_cc picks and renumbers the biggest component") {
  SUBCASE("connected input stays put") {
    const Graph g = gen_ba(50, 3, 9);
    const auto r = largest_cc(g);
    CHECK(r.graph == g);
    for (NodeID v = 0; v < 50; ++v) CHECK(r.old_to_new[v] == v);
  }

  SUBCASE("two triangles and an isolated vertex") {
    GraphBuilder b(7);
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(0, 2);
    b.add_edge(4, 5);
    b.add_edge(5, 6);
    b.add_edge(4, 6);
    const auto r = largest_cc(b.build());
    CHECK(r.graph.n() == 3);
    CHECK(r.graph.m() == 3);
    // ties resolve to the component containing vertex 0
    CHECK(r.old_to_new[0] == 0);
    CHECK(r.old_to_new[3] == kInvalidNode);
    CHECK(r.old_to_new[4] == kInvalidNode);
    CHECK(connected(r.graph));
  }

  SUBCASE("empty graph") {
    const auto r = largest_cc(GraphBuilder(0).build());
    CHECK(r.graph.n() == 0);
  }

  SUBCASE("rmat components stay connected after extraction") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = gen_rmat(8, 2, RmatParams{}, seed);
      const auto r = largest_cc(g);
      REQUIRE(connected(r.graph));
      REQUIRE(r.graph.n() >= 1);
      check_canonical(r.graph);
    }
  }
}
