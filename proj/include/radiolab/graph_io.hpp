#pragma once

#include <iosfwd>
#include <string>

#include "radiolab/graph.hpp"

namespace radiolab {

// Edge-list text: "n m" then m lines "u v", 0-based.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

void write_dot(std::ostream& out, const Graph& g);

}  // namespace radiolab
