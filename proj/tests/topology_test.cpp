#include <doctest.h>

#include <set>

#include "hiermap/topology.hpp"
#include "test_support.hpp"

using namespace hiermap;

namespace {

Topology make(std::vector<std::uint32_t> children, std::vector<CostT> distances) {
  return Topology::build(HierarchySpec{std::move(children), std::move(distances)});
}

} // namespace

TEST_CASE("four-level example hierarchy: 160 PEs, labels up to 231") {
  const Topology t = make({4, 2, 5, 4}, {1, 10, 100, 1000});
  REQUIRE(t.num_pes() == 160);

  std::set<PELabel> labels(t.labels().begin(), t.labels().end());
  CHECK(labels.size() == 160); // pairwise distinct
  CHECK(*labels.rbegin() == 231);
  CHECK(*labels.begin() == 0);

  // core 3, processor 0, node 0, rack 2 -> index 3 + 4*(0 + 2*(0 + 5*2))
  CHECK(t.pe_label(83) == 131);
  CHECK(t.label_to_pe(131) == 83);

  // section layout of 131 = 10|000|0|11
  CHECK(t.section_value(131, 0) == 3);
  CHECK(t.section_value(131, 1) == 0);
  CHECK(t.section_value(131, 2) == 0);
  CHECK(t.section_value(131, 3) == 2);
}

TEST_CASE("single level of two cores") {
  const Topology t = make({2}, {1});
  CHECK(t.pe_label(0) == 0);
  CHECK(t.pe_label(1) == 1);
  CHECK(t.num_pes() == 2);
}

TEST_CASE("two levels of three: sparse labels") {
  const Topology t = make({3, 3}, {1, 2});
  const std::vector<PELabel> expected{0, 1, 2, 4, 5, 6, 8, 9, 10};
  CHECK(t.labels() == expected);
  CHECK(t.label_to_pe(4) == 3);
  CHECK_THROWS_AS(t.label_to_pe(3), InputError);  // section value 3 >= 3
  CHECK_THROWS_AS(t.label_to_pe(16), InputError); // beyond the label width
}

TEST_CASE("distances follow the section of the leading xor bit") {
  const Topology t = make({4, 4, 4}, {2, 4, 10});
  CHECK(t.distance(5, 4) == 2);
  CHECK(t.distance(5, 1) == 4);
  CHECK(t.distance(5, 21) == 10);
  CHECK(t.distance(5, 5) == 0);
  CHECK(t.distance(21, 5) == 10); // symmetric
}

TEST_CASE("common ancestor level") {
  const Topology a = make({4, 2, 5, 4}, {1, 10, 100, 1000});
  // labels differing only in the node section
  const PELabel x = a.pe_label(0);
  const PELabel y = a.pe_label(a.label_to_pe(x | (PELabel{1} << a.section_offset(2))));
  CHECK(a.common_ancestor_level(x, y) == 2);
  CHECK(!a.common_ancestor_level(x, x).has_value());

  const Topology b = make({3, 3}, {1, 2});
  CHECK(b.common_ancestor_level(1, 2) == 0);
  CHECK(b.common_ancestor_level(1, 4) == 1);
}

TEST_CASE("degenerate one-child levels contribute no bits") {
  const Topology t = make({2, 1, 2}, {1, 5, 9});
  CHECK(t.num_pes() == 4);
  CHECK(t.section_width(1) == 0);
  const std::vector<PELabel> expected{0, 1, 2, 3};
  CHECK(t.labels() == expected);
  CHECK(t.distance(t.pe_label(0), t.pe_label(2)) == 9); // level 1 is unreachable
  CHECK(t.distance(t.pe_label(0), t.pe_label(1)) == 1);

  const Topology single = make({1}, {7});
  CHECK(single.num_pes() == 1);
  CHECK(single.pe_label(0) == 0);
}

TEST_CASE("validation rejects malformed specs") {
  CHECK_THROWS_AS(make({}, {}), InputError);
  CHECK_THROWS_AS(make({2, 0}, {1, 2}), InputError);
  CHECK_THROWS_AS(make({2, 2}, {1}), InputError);
  CHECK_THROWS_AS(make({2}, {-1}), InputError);
  // 4 levels of 2^20 children: 80 bits, over the word size
  CHECK_THROWS_AS(make({1u << 20, 1u << 20, 1u << 20, 1u << 20}, {1, 2, 3, 4}), InputError);
  const Topology t = make({2}, {1});
  CHECK_THROWS_AS(t.pe_label(2), InputError);
}

TEST_CASE("hierarchy string parsing") {
  CHECK(parse_hierarchy_string("4:2:5:4") == std::vector<std::uint32_t>{4, 2, 5, 4});
  CHECK(parse_distance_string("1:10:100:1000") == std::vector<CostT>{1, 10, 100, 1000});
  CHECK(parse_hierarchy_string("8") == std::vector<std::uint32_t>{8});
  CHECK_THROWS_AS(parse_hierarchy_string(""), InputError);
  CHECK_THROWS_AS(parse_hierarchy_string("4::2"), InputError);
  CHECK_THROWS_AS(parse_hierarchy_string("4:x"), InputError);
  CHECK_THROWS_AS(parse_hierarchy_string("4:0:2"), InputError);
  CHECK_THROWS_AS(parse_hierarchy_string("4:2:"), InputError);
  CHECK_THROWS_AS(parse_hierarchy_string("-1:2"), InputError);
}

TEST_CASE("round-trip and section bounds on random hierarchies") {
  Rng rng(0xdecaf);
  for (int trial = 0; trial < 200; ++trial) {
    const HierarchySpec spec = testing::random_hierarchy(rng);
    const Topology t = Topology::build(spec);
    for (PEID p = 0; p < t.num_pes(); ++p) {
      REQUIRE(t.label_to_pe(t.pe_label(p)) == p);
      for (std::uint32_t level = 0; level < t.levels(); ++level) {
        REQUIRE(t.section_value(t.pe_label(p), level) < spec.children[level]);
      }
    }
  }
}

TEST_CASE("xor distance equals the explicit tree oracle") {
  Rng rng(0x7ee5);
  for (int trial = 0; trial < 25; ++trial) {
    const HierarchySpec spec = testing::random_hierarchy(rng, 5, 8, 512);
    const Topology t = Topology::build(spec);
    for (PEID p = 0; p < t.num_pes(); ++p) {
      for (PEID q = 0; q < t.num_pes(); ++q) {
        const CostT expected = testing::tree_distance(spec, p, q);
        REQUIRE(t.distance(t.pe_label(p), t.pe_label(q)) == expected);
      }
    }
  }
}

TEST_CASE("distance symmetry and identity on random labels") {
  Rng rng(0x51de);
  for (int trial = 0; trial < 50; ++trial) {
    const Topology t = Topology::build(testing::random_hierarchy(rng, 4, 6, 1024));
    for (int i = 0; i < 64; ++i) {
      const PELabel a = t.pe_label(static_cast<PEID>(rng.next_below(t.num_pes())));
      const PELabel b = t.pe_label(static_cast<PEID>(rng.next_below(t.num_pes())));
      REQUIRE(t.distance(a, b) == t.distance(b, a));
      REQUIRE(t.distance(a, a) == 0);
    }
  }
}
