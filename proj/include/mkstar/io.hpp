#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mkstar/graph.hpp"
#include "mkstar/partition.hpp"
#include "mkstar/structure.hpp"

namespace mkstar {

// Graph file grammar, one record per line:
//   # comment
//   n <count>          (first record)
//   <u> <v> <w>        edge, 0-based, w > 0
//   m <v> <value>      vertex mass, value > 0
// Errors carry the 1-based line number in Error::line.
Graph parse_graph_file(std::string_view text);

// Canonical form: header, edges sorted by (u, v), then mass lines for
// non-unit masses only. Numbers use the shortest round-trip representation.
std::string write_graph_file(const Graph& g);

// Candidate split for l-dependence checks: lines "v1 ...", "v2 ...", "v3 ...".
LDependentCandidate parse_partition_file(std::string_view text);

// DOT `graph` with weight labels; when a partition is given each node is
// filled with colour index label+1 of the set312 scheme.
std::string emit_dot(const Graph& g, const std::optional<Partition>& p = std::nullopt);

// Shortest decimal form that parses back to the same double.
std::string format_number(double x);

std::string read_file(const std::string& path);

}  // namespace mkstar
