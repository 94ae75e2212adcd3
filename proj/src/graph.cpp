#include "hermsrg/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hermsrg/util.hpp"

namespace hermsrg {

Graph::Graph(int n) : n_(n), rows_(n, Bitset(n)) {
  if (n < 0) throw std::invalid_argument("Graph: negative order");
}

Graph::Graph(std::vector<Bitset> rows)
    : n_(static_cast<int>(rows.size())), rows_(std::move(rows)) {
  for (int u = 0; u < n_; ++u) {
    if (rows_[u].size() != n_)
      throw std::invalid_argument("Graph: row size mismatch");
    if (rows_[u].test(u)) throw std::invalid_argument("Graph: loop edge");
    rows_[u].for_each([&](int v) {
      if (!rows_[v].test(u))
        throw std::invalid_argument("Graph: asymmetric adjacency");
    });
  }
}

Graph build_graph(int n, const std::function<bool(int, int)>& adjacent,
                  int threads) {
  std::vector<Bitset> rows(n, Bitset(n));
  parallel_for(n, threads, [&](std::int64_t lo, std::int64_t hi) {
    for (int u = static_cast<int>(lo); u < hi; ++u)
      for (int v = 0; v < n; ++v)
        if (v != u && adjacent(u, v)) rows[u].set(v);
  });
  return Graph(std::move(rows));  // the validating ctor rejects asymmetry
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("Graph: loop edge");
  rows_[u].set(v);
  rows_[v].set(u);
}

void Graph::remove_edge(int u, int v) {
  rows_[u].reset(v);
  rows_[v].reset(u);
}

void Graph::toggle_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("Graph: loop edge");
  if (adjacent(u, v))
    remove_edge(u, v);
  else
    add_edge(u, v);
}

long long Graph::num_edges() const {
  long long twice = 0;
  for (const Bitset& r : rows_) twice += r.count();
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    rows_[u].for_each([&](int v) {
      if (v > u) out.emplace_back(u, v);
    });
  return out;
}

Graph Graph::complement() const {
  Graph c(n_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) c.add_edge(u, v);
  return c;
}

Graph Graph::induced(const std::vector<int>& verts) const {
  Graph g(static_cast<int>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (adjacent(verts[i], verts[j]))
        g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw std::invalid_argument("permuted: wrong permutation length");
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n_; ++i)
    if (check[i] != i) throw std::invalid_argument("permuted: not a permutation");
  Graph g(n_);
  for (int u = 0; u < n_; ++u)
    rows_[u].for_each([&](int v) {
      if (v > u) g.add_edge(perm[u], perm[v]);
    });
  return g;
}

bool Graph::operator==(const Graph& o) const {
  if (n_ != o.n_) return false;
  for (int u = 0; u < n_; ++u)
    if (!(rows_[u] == o.rows_[u])) return false;
  return true;
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  Bitset seen(n_);
  std::vector<int> stack = {0};
  seen.set(0);
  int found = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    rows_[u].for_each([&](int v) {
      if (!seen.test(v)) {
        seen.set(v);
        ++found;
        stack.push_back(v);
      }
    });
  }
  return found == n_;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d(n_);
  for (int u = 0; u < n_; ++u) d[u] = degree(u);
  std::sort(d.begin(), d.end());
  return d;
}

// ---------------------------------------------------------------------------

std::optional<SrgParams> check_srg(const Graph& g, int threads) {
  const int n = g.n();
  if (n < 2) return std::nullopt;
  const int k = g.degree(0);
  for (int u = 1; u < n; ++u)
    if (g.degree(u) != k) return std::nullopt;
  if (k == 0 || k == n - 1) return std::nullopt;  // trivial cases excluded
  std::atomic<int> lambda{-1}, mu{-1};
  std::atomic<bool> ok{true};
  parallel_for(n, threads, [&](std::int64_t lo, std::int64_t hi) {
    for (int u = static_cast<int>(lo); u < hi && ok.load(std::memory_order_relaxed); ++u) {
      for (int v = u + 1; v < n; ++v) {
        int c = Bitset::and_count(g.neighbors(u), g.neighbors(v));
        std::atomic<int>& slot = g.adjacent(u, v) ? lambda : mu;
        int want = slot.load(std::memory_order_relaxed);
        if (want < 0) {
          int expect = -1;
          if (!slot.compare_exchange_strong(expect, c)) want = expect;
        }
        want = slot.load(std::memory_order_relaxed);
        if (want != c) {
          ok.store(false, std::memory_order_relaxed);
          return;
        }
      }
    }
  });
  if (!ok.load()) return std::nullopt;
  // k < n-1 guarantees some non-edge; connectivity is not required, but a
  // disconnected SRG still has mu = 0 set consistently.
  SrgParams p{n, k, lambda.load(), mu.load()};
  if (p.lambda < 0 || p.mu < 0) return std::nullopt;
  return p;
}

bool srg_feasible(const SrgParams& p) {
  if (p.v <= 0 || p.k <= 0 || p.k >= p.v - 1) return false;
  if (p.lambda < 0 || p.lambda > p.k - 1) return false;
  if (p.mu < 0 || p.mu > p.k) return false;
  return p.k * (p.k - p.lambda - 1) == (p.v - p.k - 1) * p.mu;
}

namespace {
long long isqrt_ll(long long x) {
  if (x < 0) return -1;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}
}  // namespace

std::optional<SrgSpectrum> srg_spectrum(const SrgParams& p) {
  if (!srg_feasible(p)) return std::nullopt;
  const long long D = (p.lambda - p.mu) * (p.lambda - p.mu) + 4 * (p.k - p.mu);
  const long long sq = isqrt_ll(D);
  SrgSpectrum s;
  const long long t = 2 * p.k + (p.v - 1) * (p.lambda - p.mu);
  if (t == 0) {
    // Conference graph: multiplicities are forced to (v-1)/2.
    s.conference = true;
    if ((p.v - 1) % 2 != 0) return std::nullopt;
    s.f = s.g = (p.v - 1) / 2;
    if (sq * sq == D && (p.lambda - p.mu + sq) % 2 == 0) {
      s.integral = true;
      s.r = (p.lambda - p.mu + sq) / 2;
      s.s = (p.lambda - p.mu - sq) / 2;
    }
    return s;
  }
  // Non-conference: sqrt(D) must be a positive integer dividing t, with the
  // right parity, and the multiplicities must come out as whole numbers.
  if (sq * sq != D || sq == 0) return std::nullopt;
  if ((p.lambda - p.mu + sq) % 2 != 0) return std::nullopt;
  if (t % sq != 0) return std::nullopt;
  const long long ratio = t / sq;
  if ((p.v - 1 - ratio) % 2 != 0) return std::nullopt;
  s.integral = true;
  s.r = (p.lambda - p.mu + sq) / 2;
  s.s = (p.lambda - p.mu - sq) / 2;
  s.f = (p.v - 1 - ratio) / 2;
  s.g = (p.v - 1 + ratio) / 2;
  if (s.f < 0 || s.g < 0) return std::nullopt;
  // Trace identity: k + f r + g s = 0.
  if (p.k + s.f * s.r + s.g * s.s != 0) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct CliqueSearch {
  const Graph& g;
  const std::function<bool(const std::vector<int>&)>& fn;
  std::vector<int> r;
  bool stopped = false;

  bool run(Bitset p, Bitset x) {
    if (!p.any() && !x.any()) {
      if (!fn(r)) {
        stopped = true;
        return false;
      }
      return true;
    }
    // Tomita pivot: vertex of P u X covering the most of P.
    int pivot = -1, best = -1;
    for (const Bitset* side : {&p, &x}) {
      side->for_each([&](int u) {
        int c = Bitset::and_count(p, g.neighbors(u));
        if (c > best) {
          best = c;
          pivot = u;
        }
      });
    }
    Bitset cand = p;
    cand.andnot(g.neighbors(pivot));
    bool keep_going = true;
    cand.for_each([&](int v) {
      if (!keep_going) return;
      Bitset p2 = p;
      p2 &= g.neighbors(v);
      Bitset x2 = x;
      x2 &= g.neighbors(v);
      r.push_back(v);
      keep_going = run(std::move(p2), std::move(x2));
      r.pop_back();
      if (keep_going) {
        p.reset(v);
        x.set(v);
      }
    });
    return keep_going;
  }
};

}  // namespace

bool for_each_maximal_clique(
    const Graph& g, const std::function<bool(const std::vector<int>&)>& fn) {
  Bitset p(g.n()), x(g.n());
  for (int i = 0; i < g.n(); ++i) p.set(i);
  CliqueSearch cs{g, fn, {}, false};
  cs.run(std::move(p), std::move(x));
  return !cs.stopped;
}

std::map<int, long long> maximal_clique_census(const Graph& g) {
  std::map<int, long long> census;
  for_each_maximal_clique(g, [&](const std::vector<int>& c) {
    ++census[static_cast<int>(c.size())];
    return true;
  });
  return census;
}

int max_clique_size(const Graph& g) {
  int best = 0;
  for_each_maximal_clique(g, [&](const std::vector<int>& c) {
    best = std::max(best, static_cast<int>(c.size()));
    return true;
  });
  return best;
}

long long triangle_count(const Graph& g) {
  long long total = 0;
  for (long long t : triangles_per_vertex(g)) total += t;
  return total / 3;
}

std::vector<long long> triangles_per_vertex(const Graph& g) {
  std::vector<long long> t(g.n(), 0);
  for (int u = 0; u < g.n(); ++u) {
    long long twice = 0;
    g.neighbors(u).for_each([&](int v) {
      twice += Bitset::and_count(g.neighbors(u), g.neighbors(v));
    });
    t[u] = twice / 2;
  }
  return t;
}

long long k4_count(const Graph& g, int threads) {
  const int n = g.n();
  std::atomic<long long> total{0};
  parallel_for(n, threads, [&](std::int64_t lo, std::int64_t hi) {
    long long local = 0;
    for (int u = static_cast<int>(lo); u < hi; ++u) {
      g.neighbors(u).for_each([&](int v) {
        if (v <= u) return;
        // Count edges inside the common neighborhood of u and v.
        Bitset common = g.neighbors(u);
        common &= g.neighbors(v);
        common.for_each([&](int w) {
          local += Bitset::and_count(common, g.neighbors(w));
        });
      });
    }
    total += local;  // each K4 counted 6 (edges) x 2 (ordered w-x) times
  });
  return total.load() / 12;
}

// ---------------------------------------------------------------------------

Bitset common_neighbors(const Graph& g, const std::vector<int>& verts) {
  if (verts.empty())
    throw std::invalid_argument("common_neighbors: empty vertex set");
  Bitset acc = g.neighbors(verts[0]);
  for (std::size_t i = 1; i < verts.size(); ++i) acc &= g.neighbors(verts[i]);
  return acc;
}

std::map<long long, long long> full_triple_census(const Graph& g, int threads) {
  const int n = g.n();
  std::map<long long, long long> census;
  std::mutex merge;
  // Each triangle {u < v < w} is scanned once, anchored at u.  Low anchors own
  // far more triangles, so hand vertices out dynamically in small blocks.
  const std::int64_t grain = std::max<std::int64_t>(1, n / 1024);
  parallel_for_dynamic(n, threads, grain, [&](std::int64_t lo, std::int64_t hi) {
    thread_local std::vector<long long> hist;
    if (static_cast<int>(hist.size()) < n + 1) hist.assign(n + 1, 0);
    for (int u = static_cast<int>(lo); u < hi; ++u) {
      g.neighbors(u).for_each([&](int v) {
        if (v <= u) return;
        Bitset common = g.neighbors(u);
        common &= g.neighbors(v);
        common.for_each([&](int w) {
          if (w <= v) return;
          hist[Bitset::and_count(common, g.neighbors(w))]++;
        });
      });
    }
    // Flush this block's histogram so thread_local reuse stays correct even
    // if the pool implementation recycles threads across calls.
    std::map<long long, long long> local;
    for (int c = 0; c <= n; ++c)
      if (hist[c] != 0) {
        local[c] = hist[c];
        hist[c] = 0;
      }
    std::lock_guard<std::mutex> lock(merge);
    for (auto& [value, freq] : local) census[value] += freq;
  });
  return census;
}

std::map<long long, long long> sampled_triple_census(const Graph& g, long long count,
                                                     std::uint64_t seed) {
  const int n = g.n();
  std::map<long long, long long> census;
  if (n == 0 || count <= 0) return census;
  std::mt19937_64 rng(seed);
  long long produced = 0;
  long long attempts = 0;
  const long long attempt_cap = 1000 * count + 1000000;
  while (produced < count && attempts < attempt_cap) {
    ++attempts;
    int u = static_cast<int>(rng() % n);
    int v = static_cast<int>(rng() % n);
    if (u == v || !g.adjacent(u, v)) continue;
    Bitset common = g.neighbors(u);
    common &= g.neighbors(v);
    std::vector<int> opts;
    common.for_each([&](int w) { opts.push_back(w); });
    if (opts.empty()) continue;
    int w = opts[rng() % opts.size()];
    Bitset tri = common;
    tri &= g.neighbors(w);
    census[tri.count()]++;
    ++produced;
  }
  return census;
}

std::map<long long, long long> listed_triple_census(
    const Graph& g, const std::vector<std::array<int, 3>>& triples) {
  std::map<long long, long long> census;
  for (const auto& t : triples) {
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2] ||
        !g.adjacent(t[0], t[1]) || !g.adjacent(t[0], t[2]) ||
        !g.adjacent(t[1], t[2]))
      throw std::invalid_argument("listed_triple_census: triple not pairwise adjacent");
    census[common_neighbors(g, {t[0], t[1], t[2]}).count()]++;
  }
  return census;
}

// ---------------------------------------------------------------------------

Refinement wl_refine(const Graph& g, std::vector<int> init) {
  const int n = g.n();
  Refinement ref;
  if (init.empty()) {
    // Canonical start: colour by degree rank.
    std::vector<int> degs(n);
    for (int u = 0; u < n; ++u) degs[u] = g.degree(u);
    std::vector<int> uniq = degs;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    init.resize(n);
    for (int u = 0; u < n; ++u)
      init[u] = static_cast<int>(
          std::lower_bound(uniq.begin(), uniq.end(), degs[u]) - uniq.begin());
  }
  if (static_cast<int>(init.size()) != n)
    throw std::invalid_argument("wl_refine: wrong initial colouring size");
  std::vector<int> colour = std::move(init);
  int num = colour.empty() ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  using Sig = std::vector<std::pair<int, int>>;  // (colour, count), own colour first
  std::vector<int> counts;
  for (int round = 0;; ++round) {
    std::vector<Sig> sigs(n);
    counts.assign(num, 0);
    std::vector<int> touched;
    for (int u = 0; u < n; ++u) {
      touched.clear();
      g.neighbors(u).for_each([&](int v) {
        if (counts[colour[v]]++ == 0) touched.push_back(colour[v]);
      });
      std::sort(touched.begin(), touched.end());
      Sig s;
      s.reserve(touched.size() + 1);
      s.emplace_back(colour[u], -1);
      for (int c : touched) {
        s.emplace_back(c, counts[c]);
        counts[c] = 0;
      }
      sigs[u] = std::move(s);
    }
    // Canonical new ids: sorted unique signatures.
    std::vector<const Sig*> order(n);
    for (int u = 0; u < n; ++u) order[u] = &sigs[u];
    std::sort(order.begin(), order.end(),
              [](const Sig* a, const Sig* b) { return *a < *b; });
    std::vector<Sig> uniq;
    for (const Sig* s : order)
      if (uniq.empty() || uniq.back() != *s) uniq.push_back(*s);
    std::vector<int> next(n);
    for (int u = 0; u < n; ++u)
      next[u] = static_cast<int>(
          std::lower_bound(uniq.begin(), uniq.end(), sigs[u]) - uniq.begin());
    int next_num = static_cast<int>(uniq.size());
    ref.rounds = round + 1;
    if (next == colour && next_num == num) break;
    bool stable = next_num == num;
    colour = std::move(next);
    num = next_num;
    if (stable) break;  // same class count: partition cannot refine further
  }
  ref.colour = std::move(colour);
  ref.num_colours = num;
  return ref;
}

std::vector<std::pair<int, int>> partition_histogram(const Refinement& r) {
  std::vector<int> sizes(r.num_colours, 0);
  for (int c : r.colour) ++sizes[c];
  std::vector<std::pair<int, int>> out;
  out.reserve(r.num_colours);
  for (int c = 0; c < r.num_colours; ++c) out.emplace_back(c, sizes[c]);
  return out;
}

}  // namespace hermsrg
