#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermsrg/bitset.hpp"

namespace hermsrg {

// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Adopts prebuilt adjacency rows; validates sizes, irreflexivity, symmetry.
  explicit Graph(std::vector<Bitset> rows);

  int n() const { return n_; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void toggle_edge(int u, int v);
  bool adjacent(int u, int v) const { return rows_[u].test(v); }
  const Bitset& neighbors(int v) const { return rows_[v]; }
  int degree(int v) const { return rows_[v].count(); }
  long long num_edges() const;
  std::vector<std::pair<int, int>> edges() const;

  Graph complement() const;
  Graph induced(const std::vector<int>& verts) const;
  Graph permuted(const std::vector<int>& perm) const;  // vertex i -> perm[i]
  bool operator==(const Graph& o) const;

  bool is_connected() const;
  std::vector<int> degree_sequence() const;  // sorted ascending

 private:
  int n_ = 0;
  std::vector<Bitset> rows_;
};

// Builds a graph from a symmetric irreflexive predicate, evaluating it from
// both sides in parallel; an asymmetric predicate is detected and rejected.
Graph build_graph(int n, const std::function<bool(int, int)>& adjacent,
                  int threads = 0);

// ---------------------------------------------------------------------------
// Strongly regular graphs

struct SrgParams {
  long long v = 0, k = 0, lambda = 0, mu = 0;
  bool operator==(const SrgParams& o) const {
    return v == o.v && k == o.k && lambda == o.lambda && mu == o.mu;
  }
};

// Exhaustive check over all vertex pairs (parallelised).  Returns the
// parameters if the graph is strongly regular (nontrivial: 0 < k < v-1 and
// both an edge and a non-edge exist), otherwise nullopt.
std::optional<SrgParams> check_srg(const Graph& g, int threads = 0);

// Arithmetic feasibility: the counting identity k(k-lambda-1) = (v-k-1)mu
// plus basic range requirements.  A parameter tuple failing this cannot be
// realized by any graph.
bool srg_feasible(const SrgParams& p);

// Exact spectrum of a strongly regular graph.  For a conference graph the
// eigenvalues may be irrational; `conference` is set and r/s/f/g are only
// populated when the discriminant is a perfect square.
struct SrgSpectrum {
  long long r = 0, s = 0;  // restricted eigenvalues, r > s
  long long f = 0, g = 0;  // multiplicities of r and s
  bool conference = false;
  bool integral = false;  // eigenvalues are integers
};
std::optional<SrgSpectrum> srg_spectrum(const SrgParams& p);

// ---------------------------------------------------------------------------
// Cliques and triangles

// Bron-Kerbosch with greatest-cover pivoting.  The callback receives each
// maximal clique (vertices ascending) and returns false to stop; the function
// returns false if stopped early, true if the enumeration completed.
bool for_each_maximal_clique(const Graph& g,
                             const std::function<bool(const std::vector<int>&)>& fn);

// Size -> number of maximal cliques of that size.
std::map<int, long long> maximal_clique_census(const Graph& g);
int max_clique_size(const Graph& g);

long long triangle_count(const Graph& g);
std::vector<long long> triangles_per_vertex(const Graph& g);
// Number of 4-cliques, via edges inside common neighborhoods.
long long k4_count(const Graph& g, int threads = 0);

// ---------------------------------------------------------------------------
// Common-neighbour counts of vertex triples

// Intersection of the adjacency rows of a nonempty vertex set.
Bitset common_neighbors(const Graph& g, const std::vector<int>& verts);

// Census over pairwise-adjacent triples: common-neighbour count -> frequency.
// `full_triple_census` enumerates every triangle exactly once (parallelised);
// the frequencies sum to the triangle count.
std::map<long long, long long> full_triple_census(const Graph& g, int threads = 0);

// Census over `count` pairwise-adjacent triples sampled uniformly by seeded
// walk: pick a random edge, then a random common neighbour.  Reports the
// observed value multiset; intended for value-set discovery, not frequencies.
std::map<long long, long long> sampled_triple_census(const Graph& g, long long count,
                                                     std::uint64_t seed);

// Census over an explicit list of triples (each must be pairwise adjacent).
std::map<long long, long long> listed_triple_census(
    const Graph& g, const std::vector<std::array<int, 3>>& triples);

// ---------------------------------------------------------------------------
// Colour refinement (1-WL)

// One full refinement to a stable partition.  Colours are canonical: they are
// assigned by sorted signature, so colour vectors of two graphs refined with
// the same initial colouring are directly comparable.
struct Refinement {
  std::vector<int> colour;  // per vertex
  int num_colours = 0;
  int rounds = 0;
};
Refinement wl_refine(const Graph& g, std::vector<int> init = {});

// Multiset of (colour, class size) pairs, sorted: the comparable summary of a
// stable partition.
std::vector<std::pair<int, int>> partition_histogram(const Refinement& r);

}  // namespace hermsrg
