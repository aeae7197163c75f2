#include "hiermap/topology.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace hiermap {

std::uint64_t HierarchySpec::num_pes() const {
  std::uint64_t k = 1;
  for (std::uint32_t h : children) k *= h;
  return k;
}

void HierarchySpec::validate() const {
  if (children.empty()) {
    throw InputError("hierarchy must have at least one level");
  }
  if (children.size() != distances.size()) {
    throw InputError("hierarchy and distance arrays differ in length (" +
                     std::to_string(children.size()) + " vs " + std::to_string(distances.size()) + ")");
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i] == 0) {
      throw InputError("hierarchy entry at level " + std::to_string(i) + " must be positive");
    }
    if (distances[i] < 0) {
      throw InputError("distance entry at level " + std::to_string(i) + " must be non-negative");
    }
  }
}

namespace {

std::vector<std::uint64_t> parse_colon_list(const std::string& s, const char* what) {
  std::vector<std::uint64_t> out;
  if (s.empty()) throw InputError(std::string(what) + " string is empty");
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(':', pos);
    if (next == std::string::npos) next = s.size();
    std::uint64_t value = 0;
    const char* first = s.data() + pos;
    const char* last = s.data() + next;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw InputError(std::string(what) + ": malformed entry '" + std::string(first, last) + "'");
    }
    out.push_back(value);
    pos = next + 1;
    if (next == s.size()) break;
  }
  return out;
}

} // namespace

std::vector<std::uint32_t> parse_hierarchy_string(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t v : parse_colon_list(s, "hierarchy")) {
    if (v == 0 || v > std::numeric_limits<std::uint32_t>::max()) {
      throw InputError("hierarchy entries must be positive 32-bit integers");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::vector<CostT> parse_distance_string(const std::string& s) {
  std::vector<CostT> out;
  for (std::uint64_t v : parse_colon_list(s, "distances")) {
    if (v > static_cast<std::uint64_t>(std::numeric_limits<CostT>::max())) {
      throw InputError("distance entry too large");
    }
    out.push_back(static_cast<CostT>(v));
  }
  return out;
}

Topology Topology::build(HierarchySpec spec) {
  spec.validate();

  Topology t;
  t.spec_ = std::move(spec);
  const auto& H = t.spec_.children;
  const std::uint32_t l = t.spec_.levels();

  t.widths_.resize(l);
  t.offsets_.resize(l);
  std::uint32_t bits = 0;
  for (std::uint32_t i = 0; i < l; ++i) {
    t.offsets_[i] = bits;
    t.widths_[i] = H[i] > 1 ? std::bit_width(static_cast<std::uint32_t>(H[i] - 1)) : 0;
    bits += t.widths_[i];
  }
  t.total_bits_ = bits;
  if (bits > 64) {
    throw InputError("bit-label width " + std::to_string(bits) + " exceeds the 64-bit word size");
  }

  constexpr std::uint64_t kMaxPEs = std::uint64_t{1} << 30;
  std::uint64_t k = 1;
  for (std::uint32_t h : H) {
    k *= h;
    if (k > kMaxPEs) {
      throw InputError("hierarchy describes more than " + std::to_string(kMaxPEs) + " PEs");
    }
  }

  t.labels_.resize(k);
  for (std::uint64_t p = 0; p < k; ++p) {
    std::uint64_t rem = p;
    PELabel label = 0;
    for (std::uint32_t i = 0; i < l; ++i) {
      const std::uint64_t digit = rem % H[i];
      rem /= H[i];
      label |= digit << t.offsets_[i];
    }
    t.labels_[p] = label;
  }
  return t;
}

PELabel Topology::pe_label(PEID p) const {
  if (p >= labels_.size()) {
    throw InputError("PE index " + std::to_string(p) + " out of range [0, " +
                     std::to_string(labels_.size()) + ")");
  }
  return labels_[p];
}

PEID Topology::label_to_pe(PELabel label) const {
  if (total_bits_ < 64 && (label >> total_bits_) != 0) {
    throw InputError("unknown PE label " + std::to_string(label));
  }
  const auto& H = spec_.children;
  std::uint64_t p = 0;
  for (std::uint32_t i = levels(); i-- > 0;) {
    const std::uint32_t digit = section_value(label, i);
    if (digit >= H[i]) {
      throw InputError("unknown PE label " + std::to_string(label));
    }
    p = p * H[i] + digit;
  }
  return static_cast<PEID>(p);
}

std::uint32_t Topology::section_of_msb(PELabel x) const {
  const std::uint32_t msb = std::bit_width(x) - 1; // x != 0 on this path
  // leading-bit position -> section index via the offset table
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), msb);
  return static_cast<std::uint32_t>(it - offsets_.begin()) - 1;
}

} // namespace hiermap
