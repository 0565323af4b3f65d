#pragma once

#include <iosfwd>
#include <string>

#include "rescon/graph.hpp"

namespace rescon {

// Edge-list text format:
//
//   # comment lines start with '#'
//   n m
//   i j        (m lines, 0-based node indices)
//
// Blank lines are ignored. Errors are ParseError with the 1-based line.

Graph parse_edge_list(std::istream& in, const std::string& source = "<input>");
Graph read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace rescon
