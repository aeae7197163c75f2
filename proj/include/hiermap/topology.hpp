#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hiermap/types.hpp"

namespace hiermap {

using PEID = std::uint32_t;
using PELabel = std::uint64_t;

// Machine hierarchy, bottom-up: children[0] = cores per processor, ...,
// children[l-1] = nodes at the top level. distances[i] is the cost of one
// data unit between PEs whose lowest common ancestor sits at level i.
struct HierarchySpec {
  std::vector<std::uint32_t> children;
  std::vector<CostT> distances;

  std::uint32_t levels() const { return static_cast<std::uint32_t>(children.size()); }
  std::uint64_t num_pes() const;
  void validate() const; // throws InputError
};

// `a:b:c` -> vector, strict (no empty fields, integers only).
std::vector<std::uint32_t> parse_hierarchy_string(const std::string& s);
std::vector<CostT> parse_distance_string(const std::string& s);

// Bit-label encoding of a tree hierarchy. Each PE gets one machine word whose
// bit sections hold the PE's ancestor indices per level, least significant
// section = leaf level. PE-to-PE distance is a xor plus a leading-bit lookup.
class Topology {
public:
  static Topology build(HierarchySpec spec);

  const HierarchySpec& spec() const { return spec_; }
  PEID num_pes() const { return static_cast<PEID>(labels_.size()); }
  std::uint32_t levels() const { return spec_.levels(); }
  std::uint32_t total_bits() const { return total_bits_; }
  std::uint32_t section_width(std::uint32_t level) const { return widths_[level]; }
  std::uint32_t section_offset(std::uint32_t level) const { return offsets_[level]; }

  PELabel pe_label(PEID p) const;          // throws InputError if p >= k
  PEID label_to_pe(PELabel label) const;   // throws InputError on unknown label
  const std::vector<PELabel>& labels() const { return labels_; }

  CostT distance(PELabel a, PELabel b) const {
    if (a == b) return 0;
    return spec_.distances[section_of_msb(a ^ b)];
  }

  // Level of the lowest common ancestor of two PEs; nullopt when a == b.
  std::optional<std::uint32_t> common_ancestor_level(PELabel a, PELabel b) const {
    if (a == b) return std::nullopt;
    return section_of_msb(a ^ b);
  }

  std::uint32_t section_value(PELabel label, std::uint32_t level) const {
    if (widths_[level] == 0) return 0;
    return static_cast<std::uint32_t>((label >> offsets_[level]) & ((PELabel{1} << widths_[level]) - 1));
  }

private:
  std::uint32_t section_of_msb(PELabel x) const;

  HierarchySpec spec_;
  std::vector<std::uint32_t> widths_;   // ceil(log2 children[i]); 0 when children[i] == 1
  std::vector<std::uint32_t> offsets_;  // prefix sums of widths_
  std::uint32_t total_bits_ = 0;
  std::vector<PELabel> labels_;         // one label per PE index
};

} // namespace hiermap
