#pragma once

#include <iosfwd>
#include <string>

#include "hiermap/graph.hpp"

namespace hiermap {

// METIS/Chaco text format. Header `n m [fmt]`, fmt in {absent,0,1,10,11};
// '%' starts a comment line; vertices are 1-indexed in the file. Throws
// InputError naming the offending line on malformed input. Parallel edges
// are merged by summing weights (a warning goes to `warnings` if non-null).
Graph load_metis(const std::string& path, std::ostream* warnings = nullptr);
Graph read_metis(std::istream& in, std::ostream* warnings = nullptr);

void save_metis(const std::string& path, const Graph& g);
void write_metis(std::ostream& out, const Graph& g);

// Mapping files: one decimal block id per line, line i = block of vertex i.
void write_mapping(const std::string& path, const Mapping& m);
Mapping load_mapping(const std::string& path, NodeID n, BlockID k);

} // namespace hiermap
