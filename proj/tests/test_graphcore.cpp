#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "hermsrg/gf.hpp"
#include "hermsrg/graph.hpp"
#include "hermsrg/graph6.hpp"
#include "hermsrg/iso.hpp"

using namespace hermsrg;

namespace {

Graph petersen() {
  // Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
  std::vector<std::pair<int, int>> verts;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) verts.emplace_back(i, j);
  Graph g(10);
  for (int u = 0; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) {
      auto [a, b] = verts[u];
      auto [c, d] = verts[v];
      if (a != c && a != d && b != c && b != d) g.add_edge(u, v);
    }
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph rook4x4() {
  Graph g(16);
  for (int u = 0; u < 16; ++u)
    for (int v = u + 1; v < 16; ++v)
      if (u / 4 == v / 4 || u % 4 == v % 4) g.add_edge(u, v);
  return g;
}

Graph shrikhande() {
  // Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.
  auto idx = [](int x, int y) { return ((x % 4 + 4) % 4) * 4 + ((y % 4 + 4) % 4); };
  Graph g(16);
  const int dirs[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (auto& d : dirs) {
        g.add_edge(idx(x, y), idx(x + d[0], y + d[1]));
      }
  return g;
}

Graph paley9() {
  const FieldTable& F = FieldTable::get(3, 2);
  Graph g(9);
  // Vertices are the field elements by internal code; adjacency: difference
  // is a nonzero square (well-defined since -1 is a square in GF(9)).
  for (int u = 0; u < 9; ++u)
    for (int v = u + 1; v < 9; ++v) {
      Fel d = F.sub(static_cast<Fel>(u), static_cast<Fel>(v));
      if (d != F.zero() && is_square(F, d)) g.add_edge(u, v);
    }
  return g;
}

Graph random_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() % 2) g.add_edge(u, v);
  return g;
}

std::vector<int> random_perm(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[rng() % (i + 1)]);
  return p;
}

}  // namespace

TEST_CASE("graph basics") {
  Graph g = petersen();
  CHECK(g.n() == 10);
  CHECK(g.num_edges() == 15);
  CHECK(g.is_connected());
  CHECK(g.degree_sequence() == std::vector<int>(10, 3));
  CHECK(g.edges().size() == 15);
  Graph c = g.complement();
  CHECK(c.num_edges() == 45 - 15);
  for (int u = 0; u < 10; ++u)
    for (int v = 0; v < 10; ++v)
      if (u != v) CHECK(c.adjacent(u, v) == !g.adjacent(u, v));
  // Induced subgraph on a 5-cycle of the Petersen graph.
  Graph outer = g.induced({0, 1, 2, 3, 4});  // not nec. a cycle, just check order
  CHECK(outer.n() == 5);
  Graph two_parts(6);
  two_parts.add_edge(0, 1);
  CHECK(!two_parts.is_connected());
  CHECK_THROWS_AS(g.permuted({0, 0, 1, 2, 3, 4, 5, 6, 7, 8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(two_parts.add_edge(2, 2), std::invalid_argument);
}

TEST_CASE("strongly regular checks and spectra") {
  CHECK(*check_srg(petersen()) == SrgParams{10, 3, 0, 1});
  CHECK(*check_srg(paley9()) == SrgParams{9, 4, 1, 2});
  CHECK(*check_srg(rook4x4()) == SrgParams{16, 6, 2, 2});
  CHECK(*check_srg(shrikhande()) == SrgParams{16, 6, 2, 2});
  CHECK(*check_srg(cycle(5)) == SrgParams{5, 2, 0, 1});
  CHECK(!check_srg(cycle(6)).has_value());
  CHECK(!check_srg(complete(4)).has_value());   // trivial
  CHECK(!check_srg(random_graph(30, 5)).has_value());
  // The complement of an SRG is an SRG.
  CHECK(*check_srg(petersen().complement()) == SrgParams{10, 6, 3, 4});

  auto spec = [](long long v, long long k, long long l, long long m) {
    return srg_spectrum(SrgParams{v, k, l, m});
  };
  // Petersen: integral, non-conference.
  {
    auto s = spec(10, 3, 0, 1);
    REQUIRE(s.has_value());
    CHECK(s->integral);
    CHECK(!s->conference);
    CHECK(s->r == 1);
    CHECK(s->s == -2);
    CHECK(s->f == 5);
    CHECK(s->g == 4);
  }
  // C5: conference with irrational eigenvalues.
  {
    auto s = spec(5, 2, 0, 1);
    REQUIRE(s.has_value());
    CHECK(s->conference);
    CHECK(!s->integral);
    CHECK(s->f == 2);
    CHECK(s->g == 2);
  }
  // Paley(9): conference with integral eigenvalues.
  {
    auto s = spec(9, 4, 1, 2);
    REQUIRE(s.has_value());
    CHECK(s->conference);
    CHECK(s->integral);
    CHECK(s->r == 1);
    CHECK(s->s == -2);
    CHECK(s->f == 4);
    CHECK(s->g == 4);
  }
  // The parameter families this library is built around.
  struct Row {
    SrgParams p;
    long long r, s, f, g;
  };
  const Row rows[] = {
      {{12, 9, 6, 9}, 0, -3, 8, 3},
      {{63, 32, 16, 16}, 4, -4, 27, 35},
      {{176, 135, 102, 108}, 3, -9, 120, 55},
      {{672, 495, 366, 360}, 15, -9, 231, 440},
      {{4941, 2240, 1024, 1008}, 44, -28, 1890, 3050},
      {{208, 75, 30, 25}, 10, -5, 64, 143},
      {{525, 144, 48, 36}, 18, -6, 125, 399},
      {{3648, 567, 126, 81}, 54, -9, 512, 3135},
  };
  for (const Row& row : rows) {
    CHECK(srg_feasible(row.p));
    auto s = srg_spectrum(row.p);
    REQUIRE(s.has_value());
    CHECK(s->integral);
    CHECK(s->r == row.r);
    CHECK(s->s == row.s);
    CHECK(s->f == row.f);
    CHECK(s->g == row.g);
    // Trace identity holds by construction; re-assert from the outside.
    CHECK(row.p.k + s->f * s->r + s->g * s->s == 0);
  }
  // The counting identity rules out a nearby wrong mu.
  CHECK(!srg_feasible(SrgParams{4941, 2240, 1024, 1080}));
  CHECK(!srg_spectrum(SrgParams{4941, 2240, 1024, 1080}).has_value());
}

TEST_CASE("cliques and triangles") {
  CHECK(triangle_count(petersen()) == 0);
  CHECK(triangle_count(complete(4)) == 4);
  CHECK(triangle_count(rook4x4()) == 32);
  CHECK(triangles_per_vertex(complete(5)) == std::vector<long long>(5, 6));

  std::map<int, long long> census = maximal_clique_census(petersen());
  CHECK(census == std::map<int, long long>{{2, 15}});
  CHECK(maximal_clique_census(complete(4)) == std::map<int, long long>{{4, 1}});
  CHECK(maximal_clique_census(rook4x4()) == std::map<int, long long>{{4, 8}});
  CHECK(maximal_clique_census(shrikhande()) ==
        std::map<int, long long>{{3, 32}});
  CHECK(max_clique_size(rook4x4()) == 4);
  CHECK(max_clique_size(shrikhande()) == 3);

  CHECK(k4_count(complete(4)) == 1);
  CHECK(k4_count(complete(6)) == 15);
  CHECK(k4_count(rook4x4()) == 8);
  CHECK(k4_count(shrikhande()) == 0);
  CHECK(k4_count(petersen()) == 0);

  // Early stop is honoured.
  int seen = 0;
  bool complete_run = for_each_maximal_clique(
      petersen(), [&](const std::vector<int>&) { return ++seen < 4; });
  CHECK(!complete_run);
  CHECK(seen == 4);

  // Every reported clique is maximal and a clique; cross-check on a random
  // graph against a naive O(3^n) free check of maximality.
  Graph g = random_graph(18, 77);
  long long total = 0;
  for_each_maximal_clique(g, [&](const std::vector<int>& c) {
    ++total;
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j)
        REQUIRE(g.adjacent(c[i], c[j]));
    for (int w = 0; w < g.n(); ++w) {
      if (std::find(c.begin(), c.end(), w) != c.end()) continue;
      bool extends = true;
      for (int u : c)
        if (!g.adjacent(u, w)) {
          extends = false;
          break;
        }
      REQUIRE(!extends);
    }
    return true;
  });
  CHECK(total > 0);
}

TEST_CASE("colour refinement") {
  // Strongly regular graphs are 1-WL homogeneous.
  Refinement r = wl_refine(petersen());
  CHECK(r.num_colours == 1);
  r = wl_refine(shrikhande());
  CHECK(r.num_colours == 1);
  // A path on 4 vertices splits into ends and middles.
  Graph p4(4);
  p4.add_edge(0, 1);
  p4.add_edge(1, 2);
  p4.add_edge(2, 3);
  r = wl_refine(p4);
  CHECK(r.num_colours == 2);
  CHECK(r.colour[0] == r.colour[3]);
  CHECK(r.colour[1] == r.colour[2]);
  CHECK(r.colour[0] != r.colour[1]);
  // Individualizing one vertex of a cycle breaks it apart by distance.
  std::vector<int> init(6, 0);
  init[0] = 1;
  r = wl_refine(cycle(6), init);
  CHECK(r.num_colours == 4);  // {0}, {1,5}, {2,4}, {3}
  auto hist = partition_histogram(r);
  std::multiset<int> sizes;
  for (auto [c, s] : hist) sizes.insert(s);
  CHECK(sizes == std::multiset<int>{1, 1, 2, 2});
}

TEST_CASE("graph6 encoding") {
  CHECK(to_graph6(Graph(1)) == "@");
  Graph k2(2);
  CHECK(to_graph6(k2) == "A?");
  k2.add_edge(0, 1);
  CHECK(to_graph6(k2) == "A_");
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  CHECK(to_graph6(p3) == "Bg");
  CHECK(to_graph6(complete(3)) == "Bw");
  CHECK(from_graph6("Bw") == complete(3));

  for (int n : {1, 2, 3, 10, 61, 62, 63, 64, 100, 200}) {
    Graph g = random_graph(n, 1000 + n);
    Graph h = from_graph6(to_graph6(g));
    CHECK(g == h);
    // Long form kicks in past 62 vertices.
    CHECK(to_graph6(g).size() == (n <= 62 ? 1 : 4) +
                                     (static_cast<size_t>(n) * (n - 1) / 2 + 5) / 6);
  }

  CHECK_THROWS_AS(from_graph6(""), std::invalid_argument);
  CHECK_THROWS_AS(from_graph6("A"), std::invalid_argument);       // truncated
  CHECK_THROWS_AS(from_graph6("A_?"), std::invalid_argument);     // trailing
  CHECK_THROWS_AS(from_graph6("Ac"), std::invalid_argument);      // padding
  CHECK_THROWS_AS(from_graph6("A\x1f"), std::invalid_argument);   // bad byte
  CHECK_THROWS_AS(from_graph6("~~"), std::invalid_argument);      // 8-byte form

  const std::string path = "graph6_roundtrip.g6";
  std::vector<Graph> gs = {petersen(), complete(4), random_graph(90, 4)};
  write_graph6_file(path, gs);
  std::vector<Graph> back = read_graph6_file(path);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == gs[i]);
  std::remove(path.c_str());
}

TEST_CASE("isomorphism testing") {
  // Identity and relabelings.
  for (auto base : {petersen(), shrikhande(), random_graph(100, 9)}) {
    std::vector<int> perm = random_perm(base.n(), 31337);
    Graph moved = base.permuted(perm);
    IsoResult r = is_isomorphic(base, moved, 30.0);
    REQUIRE(r.decided);
    REQUIRE(r.isomorphic);
    REQUIRE(static_cast<int>(r.mapping.size()) == base.n());
    for (int u = 0; u < base.n(); ++u)
      for (int v = u + 1; v < base.n(); ++v)
        REQUIRE(base.adjacent(u, v) ==
                moved.adjacent(r.mapping[u], r.mapping[v]));
  }
  // Different orders / degree sequences / triangle multisets.
  {
    IsoResult r = is_isomorphic(petersen(), complete(10), 10.0);
    CHECK(r.decided);
    CHECK(!r.isomorphic);
    CHECK(r.certificate == "degree sequences differ");
  }
  {
    Graph two_triangles(6);
    for (int b : {0, 3})
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) two_triangles.add_edge(b + i, b + j);
    IsoResult r = is_isomorphic(cycle(6), two_triangles, 10.0);
    CHECK(r.decided);
    CHECK(!r.isomorphic);
    CHECK(r.certificate == "per-vertex triangle multisets differ");
  }
  // The classic cospectral pair: same parameters, not isomorphic.  Degree
  // and triangle invariants agree; the triple-value profiles separate them
  // (their triangles have common-neighbour count 0 vs 1 throughout).
  {
    IsoResult r = is_isomorphic(shrikhande(), rook4x4(), 30.0);
    REQUIRE(r.decided);
    CHECK(!r.isomorphic);
    CHECK(r.certificate == "per-vertex triple-value profiles differ");
  }
  // Budget exhaustion is reported as undecided, never as a verdict.  A graph
  // against itself passes every invariant stage, so the search runs and the
  // negative budget times it out at the first node.
  {
    IsoResult r = is_isomorphic(rook4x4(), rook4x4(), -1.0);
    CHECK(!r.decided);
    CHECK(r.certificate == "search budget exhausted");
  }
  // C5 is self-complementary.
  {
    IsoResult r = is_isomorphic(cycle(5), cycle(5).complement(), 10.0);
    REQUIRE(r.decided);
    CHECK(r.isomorphic);
  }
}

TEST_CASE("building graphs from predicates") {
  // A symmetric predicate reproduces the hand-built graph.
  Graph r = rook4x4();
  Graph b = build_graph(16, [](int u, int v) {
    return u / 4 == v / 4 || u % 4 == v % 4;
  });
  CHECK(b == r);
  // The diagonal is never consulted; self-loops cannot arise.
  Graph c = build_graph(5, [](int, int) { return true; }, 2);
  CHECK(c == complete(5));
  // An asymmetric predicate is a caller bug and is rejected.
  CHECK_THROWS_AS(build_graph(4, [](int u, int v) { return u < v && v == u + 1; }),
                  std::invalid_argument);
  // The validating constructor enforces symmetry and irreflexivity.
  {
    std::vector<Bitset> rows(3, Bitset(3));
    rows[0].set(1);  // 0 -> 1 without 1 -> 0
    CHECK_THROWS_AS(Graph(std::move(rows)), std::invalid_argument);
  }
  {
    std::vector<Bitset> rows(2, Bitset(2));
    rows[0].set(0);
    CHECK_THROWS_AS(Graph(std::move(rows)), std::invalid_argument);
  }
}

TEST_CASE("common neighborhoods") {
  Graph p = petersen();
  CHECK_THROWS_AS(common_neighbors(p, {}), std::invalid_argument);
  // A single vertex gives its own neighborhood.
  Bitset n0 = common_neighbors(p, {0});
  CHECK(n0 == p.neighbors(0));
  // Petersen is SRG(10,3,0,1): nonadjacent pairs share exactly one neighbor.
  for (int u = 0; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) {
      Bitset cn = common_neighbors(p, {u, v});
      CHECK(cn.count() == (p.adjacent(u, v) ? 0 : 1));
    }
}

TEST_CASE("adjacent-triple censuses") {
  // Petersen is triangle-free: the census is empty.
  CHECK(full_triple_census(petersen()).empty());

  // The 4x4 rook graph and the Shrikhande graph share SRG(16,6,2,2) but
  // differ here: rook triangles live in a row or column whose fourth cell
  // is adjacent to all three, while Shrikhande is K4-free.
  Graph r = rook4x4(), s = shrikhande();
  std::map<long long, long long> cr = full_triple_census(r);
  std::map<long long, long long> cs = full_triple_census(s);
  CHECK(cr == std::map<long long, long long>{{1, 32}});
  CHECK(cs == std::map<long long, long long>{{0, 32}});
  CHECK(triangle_count(r) == 32);
  // Thread count must not change the census.
  CHECK(full_triple_census(r, 3) == cr);

  // Sampling only ever sees values the full census contains.
  std::map<long long, long long> sample = sampled_triple_census(r, 500, 42);
  long long total = 0;
  for (auto& [value, freq] : sample) {
    CHECK(cr.count(value) == 1);
    total += freq;
  }
  CHECK(total == 500);
  // Same seed, same histogram.
  CHECK(sampled_triple_census(r, 500, 42) == sample);

  // Listing all triangles explicitly reproduces the full census.
  std::vector<std::array<int, 3>> triangles;
  for (int u = 0; u < 16; ++u)
    for (int v = u + 1; v < 16; ++v) {
      if (!r.adjacent(u, v)) continue;
      for (int w = v + 1; w < 16; ++w)
        if (r.adjacent(u, w) && r.adjacent(v, w))
          triangles.push_back({u, v, w});
    }
  CHECK(listed_triple_census(r, triangles) == cr);
  // Cells (0,0), (0,1), (1,1): the first and last share no row or column.
  CHECK_THROWS_AS(listed_triple_census(r, {{0, 1, 5}}), std::invalid_argument);
}
