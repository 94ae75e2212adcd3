#pragma once

#include <string>
#include <vector>

#include "hermsrg/graph.hpp"

namespace hermsrg {

struct IsoResult {
  bool decided = false;     // search reached a verified verdict within budget
  bool isomorphic = false;  // meaningful only when decided
  std::vector<int> mapping; // vertex map a -> b when isomorphic (verified)
  std::string certificate;  // one-line reason for the verdict
  long long nodes = 0;      // search tree nodes explored
};

// Exact isomorphism test: cheap invariants (order, degree sequence, triangle
// multiset), then joint colour refinement, then individualization-refinement
// backtracking.  A "yes" is always returned with an edge-checked bijection; a
// "no" names the invariant that failed or reports an exhausted search.  The
// search gives up (decided = false) after budget_secs.
IsoResult is_isomorphic(const Graph& a, const Graph& b, double budget_secs = 60.0);

// Per-vertex triple profile: the sorted list, over all triangles on the
// vertex, of the triangle's common-neighbour count.  An isomorphism
// invariant strictly finer than the per-vertex triangle count; it separates
// same-parameter strongly regular graphs whose coarser invariants all agree.
// Cost and memory grow with the triangle count, so callers gate its use.
std::vector<std::vector<int>> triple_profiles(const Graph& g);

}  // namespace hermsrg
