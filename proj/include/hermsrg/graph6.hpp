#pragma once

#include <string>
#include <vector>

#include "hermsrg/graph.hpp"

namespace hermsrg {

// graph6 encoding of an undirected graph (upper triangle, column major,
// 6 bits per printable byte).  Orders up to 68719476735 are defined by the
// format; this library accepts up to 258047 (the 4-byte size form).
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& s);  // strict; throws on malformed input

// One graph per line; an optional ">>graph6<<" header is written/skipped.
void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs);
std::vector<Graph> read_graph6_file(const std::string& path);

}  // namespace hermsrg
