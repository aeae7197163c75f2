#include "hiermap/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace hiermap {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw InputError("graph parse error at line " + std::to_string(line_no) + ": " + what);
}

struct LineTokens {
  const std::string* line;
  std::size_t pos = 0;

  bool next(std::uint64_t& out) {
    const std::string& s = *line;
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    if (pos >= s.size()) return false;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), out);
    if (ec != std::errc{} || (ptr != s.data() + s.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
      return false; // caller reports the line
    }
    pos = static_cast<std::size_t>(ptr - s.data());
    return true;
  }

  bool at_end() {
    const std::string& s = *line;
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    return pos >= s.size();
  }
};

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    return true;
  }
  return false;
}

} // namespace

Graph read_metis(std::istream& in, std::ostream* warnings) {
  std::string line;
  std::size_t line_no = 0;

  if (!next_content_line(in, line, line_no)) {
    throw InputError("graph file is empty");
  }

  LineTokens tok{&line};
  std::uint64_t n = 0, m = 0, fmt = 0;
  if (!tok.next(n) || !tok.next(m)) parse_fail(line_no, "expected header 'n m [fmt]'");
  bool has_fmt = tok.next(fmt);
  if (!tok.at_end()) parse_fail(line_no, "trailing tokens after header");
  if (has_fmt && fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    parse_fail(line_no, "unsupported fmt flag " + std::to_string(fmt));
  }
  const bool has_edge_weights = (fmt == 1 || fmt == 11);
  const bool has_vertex_weights = (fmt == 10 || fmt == 11);
  if (n > static_cast<std::uint64_t>(kInvalidNode)) parse_fail(line_no, "vertex count too large");

  struct Entry {
    NodeID target;
    EdgeWeight weight;
  };
  std::vector<std::vector<Entry>> adj(n);
  std::vector<NodeWeight> vwgt(n, 1);
  std::vector<std::size_t> vertex_line(n, 0);
  std::uint64_t directed_entries = 0;

  for (std::uint64_t u = 0; u < n; ++u) {
    if (!next_content_line(in, line, line_no)) {
      throw InputError("graph parse error: file ends before line of vertex " + std::to_string(u + 1));
    }
    vertex_line[u] = line_no;
    LineTokens vt{&line};
    if (has_vertex_weights) {
      std::uint64_t w = 0;
      if (!vt.next(w)) parse_fail(line_no, "missing vertex weight");
      if (w == 0) parse_fail(line_no, "vertex weights must be positive");
      vwgt[u] = static_cast<NodeWeight>(w);
    }
    while (!vt.at_end()) {
      std::uint64_t v = 0;
      if (!vt.next(v)) parse_fail(line_no, "malformed neighbor token");
      if (v < 1 || v > n) parse_fail(line_no, "neighbor index " + std::to_string(v) + " out of range [1, " + std::to_string(n) + "]");
      if (v - 1 == u) parse_fail(line_no, "self-loop on vertex " + std::to_string(u + 1));
      EdgeWeight w = 1;
      if (has_edge_weights) {
        std::uint64_t ew = 0;
        if (!vt.next(ew)) parse_fail(line_no, "missing edge weight");
        if (ew == 0) parse_fail(line_no, "edge weights must be positive");
        w = static_cast<EdgeWeight>(ew);
      }
      adj[u].push_back({static_cast<NodeID>(v - 1), w});
      ++directed_entries;
    }
  }

  if (next_content_line(in, line, line_no)) {
    LineTokens rest{&line};
    if (!rest.at_end()) parse_fail(line_no, "unexpected content after the last vertex line");
  }
  if (directed_entries != 2 * m) {
    throw InputError("graph parse error: header claims " + std::to_string(m) + " edges but the file holds " +
                     std::to_string(directed_entries) + " adjacency entries (expected " + std::to_string(2 * m) + ")");
  }

  // canonicalize: sort, merge duplicates
  bool merged_any = false;
  for (std::uint64_t u = 0; u < n; ++u) {
    auto& list = adj[u];
    std::sort(list.begin(), list.end(), [](const Entry& a, const Entry& b) { return a.target < b.target; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < list.size(); ++r) {
      if (w > 0 && list[w - 1].target == list[r].target) {
        list[w - 1].weight += list[r].weight;
        merged_any = true;
      } else {
        list[w++] = list[r];
      }
    }
    list.resize(w);
  }
  if (merged_any && warnings != nullptr) {
    *warnings << "warning: parallel edges merged by summing weights\n";
  }

  // symmetry check: every (u,v,w) needs a matching (v,u,w)
  for (std::uint64_t u = 0; u < n; ++u) {
    for (const Entry& e : adj[u]) {
      const auto& other = adj[e.target];
      const Entry probe{static_cast<NodeID>(u), 0};
      auto it = std::lower_bound(other.begin(), other.end(), probe,
                                 [](const Entry& a, const Entry& b) { return a.target < b.target; });
      if (it == other.end() || it->target != u) {
        parse_fail(vertex_line[e.target], "missing reverse edge " + std::to_string(e.target + 1) + " -> " +
                                              std::to_string(u + 1));
      }
      if (it->weight != e.weight) {
        parse_fail(vertex_line[e.target], "edge " + std::to_string(u + 1) + " <-> " + std::to_string(e.target + 1) +
                                              " has asymmetric weights");
      }
    }
  }

  std::vector<EdgeID> offsets(n + 1, 0);
  for (std::uint64_t u = 0; u < n; ++u) offsets[u + 1] = offsets[u] + adj[u].size();
  std::vector<NodeID> neighbors(offsets[n]);
  std::vector<EdgeWeight> weights(offsets[n]);
  for (std::uint64_t u = 0; u < n; ++u) {
    EdgeID e = offsets[u];
    for (const Entry& entry : adj[u]) {
      neighbors[e] = entry.target;
      weights[e] = entry.weight;
      ++e;
    }
  }
  return Graph::from_csr(std::move(offsets), std::move(neighbors), std::move(weights), std::move(vwgt));
}

Graph load_metis(const std::string& path, std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return read_metis(in, warnings);
}

void write_metis(std::ostream& out, const Graph& g) {
  const bool vweights = !g.has_uniform_vertex_weights();
  const bool eweights = !g.has_uniform_edge_weights();
  out << g.n() << ' ' << g.m();
  if (vweights || eweights) {
    out << ' ' << (vweights ? "1" : "0") << (eweights ? "1" : "0");
  }
  out << '\n';
  for (NodeID u = 0; u < g.n(); ++u) {
    bool first = true;
    if (vweights) {
      out << g.vertex_weight(u);
      first = false;
    }
    auto nbrs = g.neighbors(u);
    auto wgts = g.edge_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!first) out << ' ';
      first = false;
      out << (nbrs[i] + 1);
      if (eweights) out << ' ' << wgts[i];
    }
    out << '\n';
  }
}

void save_metis(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write_metis(out, g);
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

void write_mapping(const std::string& path, const Mapping& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  for (BlockID b : m.block) out << b << '\n';
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

Mapping load_mapping(const std::string& path, NodeID n, BlockID k) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open mapping file '" + path + "'");
  Mapping m;
  m.k = k;
  m.block.reserve(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    std::uint64_t b = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), b);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw InputError("mapping parse error at line " + std::to_string(line_no) + ": malformed block id");
    }
    if (b >= k) {
      throw InputError("mapping parse error at line " + std::to_string(line_no) + ": block " +
                       std::to_string(b) + " >= k = " + std::to_string(k));
    }
    m.block.push_back(static_cast<BlockID>(b));
  }
  if (m.block.size() != n) {
    throw InputError("mapping file has " + std::to_string(m.block.size()) + " lines, expected " + std::to_string(n));
  }
  return m;
}

} // namespace hiermap
