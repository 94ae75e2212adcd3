#pragma once

#include <string>
#include <vector>

#include "hermsrg/constructions.hpp"
#include "hermsrg/graph.hpp"
#include "hermsrg/projgeom.hpp"

namespace hermsrg {

// The two possible section types of the plane spanned by the switching
// lines: a Hermitian pencil of lines or a single line.
enum class SwitchVariant { pencil, line };
std::string to_string(SwitchVariant v);
SwitchVariant switch_variant_from_string(const std::string& s);

// A switching configuration: an absolute point P and two tangent lines at P
// whose span is a plane of the requested section type.  The lines are
// recorded by their lowest off-variety representatives; everything else is
// derived deterministically, so (n, q, variant, P, rep1, rep2) replays the
// configuration exactly.
struct SwitchingConfig {
  int n = 0, q = 0;
  SwitchVariant variant = SwitchVariant::pencil;
  int P = -1;              // absolute point, ambient index
  int rep1 = -1, rep2 = -1;  // line i is the span of P and rep_i
  std::vector<int> l1, l2;   // the q^2 off-variety points of each line, sorted
  Subspace pi;               // the plane spanned by the two lines
};

// Deterministic configuration choice: the lowest-index absolute point P,
// then the lexicographically least pair of tangent lines at P whose span has
// the requested section type.  Throws if none exists (a geometry bug).
SwitchingConfig choose_config(const HermitianGeometry& h, SwitchVariant variant);
SwitchingConfig choose_config(int n, int q, SwitchVariant variant);

// The switching sets, as vertex bitsets of the accompanying graph:
//   A  = vertices adjacent to everything in l1 and everything in l2,
//   A1 = adjacent to everything in l1, less A and l2 (A2 symmetrically),
//   D  = all vertices off l1 and l2.
// The *_lines fields count the tangent lines at P whose q^2 off-P points
// make up each set (every set is a union of such punctured lines).
struct SwitchingSets {
  Bitset l1, l2;  // vertex masks of the configuration lines
  Bitset A, A1, A2, D;
  long long a_lines = 0, a1_lines = 0, a2_lines = 0;
};

// Computes the sets by direct neighbourhood intersection, then cross-checks
// them against the geometric description: each of A, A1, A2 lies in the
// polar hyperplane of P and is a union of punctured tangent lines at P, and
// for n = 4 the line counts (hence sizes) match the closed forms
//   pencil: |A| = q^2(q+1)^2,   |A1| = |A2| = q^2(q+1)(q^2-q-2),
//   line:   |A| = 2q^2(q^2-1),  |A1| = |A2| = q^3(q^2-q-1).
// Any disagreement throws std::logic_error.  For n > 4 the sizes are
// reported through the returned struct but not matched against a formula.
SwitchingSets compute_sets(const HermitianGeometry& h, const PointGraph& g,
                           const SwitchingConfig& cfg);

// Outcome of checking the switching theorem's hypotheses on (G, l1, l2).
struct WqhReport {
  bool ok = false;
  long long l_size = 0;          // |l1| = |l2|
  long long l_degree = -1;       // induced degree inside each line (q^2 - 1)
  long long cross_degree = -1;   // neighbours on the other line (0 or q^2)
  long long union_degree = -1;   // induced degree inside l1 U l2
  // Distinct values of |N(x) & l1| = |N(x) & l2| over x in D \ (A1 U A2).
  std::vector<long long> observed_equal_values;
  std::string violation;  // empty when ok
  int witness = -1;       // vertex violating a hypothesis, when !ok
};

// Checks: the induced subgraphs on l1 and l2 are complete of equal size, the
// induced subgraph on their union is regular (for the pencil variant the
// lines see nothing of each other; for the line variant every cross pair is
// adjacent, making the union complete - both are fine), members of Ai see
// all of li and none of the other line, and every other vertex of D has
// equally many neighbours in l1 and in l2.
WqhReport verify_wqh_hypotheses(const Graph& g, const SwitchingSets& sets);

// The five-case switching rule:
//   u in l1: N(u) -> (N(u) \ A1) U A2      u in A1: N(u) -> (N(u) \ l1) U l2
//   u in l2: N(u) -> (N(u) \ A2) U A1      u in A2: N(u) -> (N(u) \ l2) U l1
//   all other vertices keep their neighbourhoods.
// Applying it twice with the same sets returns the original graph.
Graph apply_switch(const Graph& g, const SwitchingSets& sets);

// The full pipeline: build the tangency graph, choose the configuration,
// compute and cross-check the sets, verify the switching hypotheses, and
// apply the switch.  Throws std::invalid_argument for n < 4 and
// std::logic_error if any verification fails.
struct SwitchedGraph {
  PointGraph base;         // the unswitched tangency graph and its labels
  Graph graph;             // the switched adjacency
  SwitchingConfig config;
  SwitchingSets sets;
  WqhReport report;
};
SwitchedGraph build_switched(const HermitianGeometry& h, SwitchVariant variant,
                             int threads = 0);
SwitchedGraph build_switched(int n, int q, SwitchVariant variant,
                             int threads = 0);

// JSON round-trip of the replay seed (schema documented in docs/formats.md).
std::string switching_config_to_json(const SwitchingConfig& cfg);
SwitchingConfig switching_config_from_json(const std::string& text);

}  // namespace hermsrg
