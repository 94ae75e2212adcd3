#include "hermsrg/switching.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hermsrg {

namespace {

// Builds and fully validates a configuration from its replay seed.
SwitchingConfig make_config(const HermitianGeometry& h, SwitchVariant variant,
                            int P, int rep1, int rep2) {
  const ProjGeometry& g = h.geom();
  if (P < 0 || P >= g.num_points() || !h.is_absolute(P))
    throw std::invalid_argument("switching config: P is not a variety point");
  for (int rep : {rep1, rep2}) {
    if (rep < 0 || rep >= g.num_points() || h.is_absolute(rep))
      throw std::invalid_argument(
          "switching config: line representative lies on the variety");
    if (h.classify_line(P, rep) != LineClass::tangent)
      throw std::invalid_argument("switching config: line at P is not tangent");
  }
  SwitchingConfig cfg;
  cfg.n = g.n();
  cfg.q = g.q();
  cfg.variant = variant;
  cfg.P = P;
  cfg.rep1 = rep1;
  cfg.rep2 = rep2;
  for (auto [rep, out] : {std::pair{rep1, &cfg.l1}, {rep2, &cfg.l2}}) {
    for (int p : g.line_points(P, rep))
      if (p != P) out->push_back(p);
    std::sort(out->begin(), out->end());
  }
  if (cfg.l1 == cfg.l2)
    throw std::invalid_argument("switching config: the two lines coincide");
  cfg.pi = g.span_of_points({P, rep1, rep2});
  if (cfg.pi.dim() != 2)
    throw std::logic_error("switching config: tangent lines span no plane");
  PlaneSection section = g.n() == 4 ? h.classify_plane(cfg.pi)
                                    : h.classify_plane_by_count(cfg.pi);
  if (section == PlaneSection::curve)
    throw std::logic_error(
        "switching config: plane on two tangent lines classified as a curve");
  SwitchVariant got = section == PlaneSection::pencil ? SwitchVariant::pencil
                                                      : SwitchVariant::line;
  if (got != variant)
    throw std::invalid_argument(
        "switching config: plane section does not match the requested variant");
  return cfg;
}

Bitset vertex_mask(const PointGraph& g, const std::vector<int>& points) {
  Bitset mask(g.graph.n());
  for (int p : points) {
    int v = g.point_vertex[p];
    if (v < 0)
      throw std::invalid_argument("switching: configuration point is not a vertex");
    mask.set(v);
  }
  return mask;
}

}  // namespace

std::string to_string(SwitchVariant v) {
  return v == SwitchVariant::pencil ? "pencil" : "line";
}

SwitchVariant switch_variant_from_string(const std::string& s) {
  if (s == "pencil") return SwitchVariant::pencil;
  if (s == "line") return SwitchVariant::line;
  throw std::invalid_argument("unknown switch variant: " + s);
}

SwitchingConfig choose_config(const HermitianGeometry& h, SwitchVariant variant) {
  const ProjGeometry& g = h.geom();
  if (g.n() < 4)
    throw std::invalid_argument("switching requires ambient dimension n >= 4");
  int P = h.absolute().lowest();
  std::vector<int> reps = h.tangent_lines_at(P);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      Subspace pi = g.span_of_points({P, reps[i], reps[j]});
      PlaneSection section = g.n() == 4 ? h.classify_plane(pi)
                                        : h.classify_plane_by_count(pi);
      if (section == PlaneSection::curve)
        throw std::logic_error(
            "plane spanned by two tangent lines classified as a curve");
      bool pencil = section == PlaneSection::pencil;
      if (pencil == (variant == SwitchVariant::pencil))
        return make_config(h, variant, P, reps[i], reps[j]);
    }
  throw std::logic_error("no tangent-line pair spans a " + to_string(variant) +
                         "-type plane");
}

SwitchingConfig choose_config(int n, int q, SwitchVariant variant) {
  return choose_config(HermitianGeometry::standard(n, q), variant);
}

SwitchingSets compute_sets(const HermitianGeometry& h, const PointGraph& g,
                           const SwitchingConfig& cfg) {
  const int nv = g.graph.n();
  SwitchingSets s;
  s.l1 = vertex_mask(g, cfg.l1);
  s.l2 = vertex_mask(g, cfg.l2);

  Bitset common1 = common_neighbors(g.graph, s.l1.to_vector());
  Bitset common2 = common_neighbors(g.graph, s.l2.to_vector());
  s.A = common1 & common2;
  s.A1 = common1;
  s.A1.andnot(s.A).andnot(s.l2);
  s.A2 = common2;
  s.A2.andnot(s.A).andnot(s.l1);
  s.D = Bitset(nv);
  for (int v = 0; v < nv; ++v) s.D.set(v);
  s.D.andnot(s.l1).andnot(s.l2);

  // Cross-check 1: the sets lie in the polar hyperplane of P.
  Bitset all = s.A | s.A1 | s.A2;
  for (int v : all.to_vector()) {
    if (h.form(cfg.P, g.vertex_point[v]) != 0)
      throw std::logic_error(
          "switching sets: vertex " + std::to_string(v) +
          " escapes the polar hyperplane of P");
  }

  // Cross-check 2: each set is a union of punctured tangent lines at P.
  // Classes: 0 = outside everything, 1 = A, 2 = A1, 3 = A2, 4 = l1, 5 = l2.
  auto class_of = [&](int point) {
    int v = g.point_vertex[point];
    if (v < 0) return -1;  // on the variety: never happens off P
    if (s.A.test(v)) return 1;
    if (s.A1.test(v)) return 2;
    if (s.A2.test(v)) return 3;
    if (s.l1.test(v)) return 4;
    if (s.l2.test(v)) return 5;
    return 0;
  };
  long long class_lines[6] = {0, 0, 0, 0, 0, 0};
  for (int rep : h.tangent_lines_at(cfg.P)) {
    int cls = -2;
    for (int p : h.geom().line_points(cfg.P, rep)) {
      if (p == cfg.P) continue;
      int c = class_of(p);
      if (cls == -2) cls = c;
      if (c != cls)
        throw std::logic_error(
            "switching sets: tangent line at P with mixed membership (point " +
            std::to_string(p) + ")");
    }
    if (cls >= 0) ++class_lines[cls];
  }
  s.a_lines = class_lines[1];
  s.a1_lines = class_lines[2];
  s.a2_lines = class_lines[3];
  const long long q = cfg.q, q2 = q * q;
  if (class_lines[4] != 1 || class_lines[5] != 1)
    throw std::logic_error("switching sets: configuration lines not recovered");
  auto require_size = [&](const char* name, const Bitset& set, long long lines) {
    if ((long long)set.count() != q2 * lines)
      throw std::logic_error(std::string("switching sets: |") + name +
                             "| != q^2 * (tangent lines at P in " + name + ")");
  };
  require_size("A", s.A, s.a_lines);
  require_size("A1", s.A1, s.a1_lines);
  require_size("A2", s.A2, s.a2_lines);

  // Cross-check 3 (n = 4): the closed-form line counts.
  if (cfg.n == 4) {
    long long ea, e12;
    if (cfg.variant == SwitchVariant::pencil) {
      ea = (q + 1) * (q + 1);
      e12 = (q + 1) * (q2 - q - 2);
    } else {
      ea = 2 * (q2 - 1);
      e12 = q * (q2 - q - 1);
    }
    if (s.a_lines != ea || s.a1_lines != e12 || s.a2_lines != e12) {
      std::ostringstream os;
      os << "switching sets: n=4 sizes disagree with the closed forms: got |A|="
         << s.A.count() << " |A1|=" << s.A1.count() << " |A2|=" << s.A2.count()
         << ", expected " << q2 * ea << ", " << q2 * e12 << ", " << q2 * e12;
      throw std::logic_error(os.str());
    }
  }
  return s;
}

WqhReport verify_wqh_hypotheses(const Graph& g, const SwitchingSets& sets) {
  WqhReport r;
  auto fail = [&](int witness, const std::string& what) {
    r.ok = false;
    r.witness = witness;
    r.violation = what;
    return r;
  };
  if ((int)sets.l1.size() != g.n())
    return fail(-1, "switching sets built for a different graph");
  long long s1 = sets.l1.count(), s2 = sets.l2.count();
  if (s1 != s2) return fail(-1, "switching lines have different sizes");
  r.l_size = s1;
  if (sets.l1.intersects(sets.l2)) return fail(-1, "switching lines intersect");

  // Complete on each line; constant cross degree keeps the union regular.
  long long cross = -1;
  for (const Bitset* mine : {&sets.l1, &sets.l2}) {
    const Bitset& other = mine == &sets.l1 ? sets.l2 : sets.l1;
    for (int u : mine->to_vector()) {
      if (Bitset::and_count(g.neighbors(u), *mine) != s1 - 1)
        return fail(u, "induced subgraph on a switching line is not complete");
      long long c = Bitset::and_count(g.neighbors(u), other);
      if (cross < 0) cross = c;
      if (c != cross)
        return fail(u, "induced subgraph on l1 U l2 is not regular");
    }
  }
  r.l_degree = s1 - 1;
  r.cross_degree = cross;
  r.union_degree = s1 - 1 + cross;

  // Dichotomy over D.
  for (int x : sets.D.to_vector()) {
    long long a = Bitset::and_count(g.neighbors(x), sets.l1);
    long long b = Bitset::and_count(g.neighbors(x), sets.l2);
    if (sets.A1.test(x)) {
      if (a != s1 || b != 0)
        return fail(x, "member of A1 does not see exactly l1");
    } else if (sets.A2.test(x)) {
      if (b != s1 || a != 0)
        return fail(x, "member of A2 does not see exactly l2");
    } else {
      if (a != b)
        return fail(x, "vertex outside A1 U A2 sees l1 and l2 unequally");
      r.observed_equal_values.push_back(a);
    }
  }
  std::sort(r.observed_equal_values.begin(), r.observed_equal_values.end());
  r.observed_equal_values.erase(std::unique(r.observed_equal_values.begin(),
                                            r.observed_equal_values.end()),
                                r.observed_equal_values.end());
  r.ok = true;
  return r;
}

Graph apply_switch(const Graph& g, const SwitchingSets& sets) {
  if ((int)sets.l1.size() != g.n())
    throw std::invalid_argument("apply_switch: sets built for a different graph");
  // Toggle every pair between a switching line and the opposite union
  // A1 | A2.  When the hypotheses hold (each vertex of A_i adjacent to all
  // of l_i and none of l_j) this XOR equals the replacement rule
  // N(u) -> (N(u) \\ A_i) | A_j, and it makes the operation a bit-exact
  // involution: applying it twice with the same sets restores the input.
  Bitset aa = sets.A1;
  aa |= sets.A2;
  Bitset ll = sets.l1;
  ll |= sets.l2;
  std::vector<Bitset> rows;
  rows.reserve(g.n());
  for (int u = 0; u < g.n(); ++u) rows.push_back(g.neighbors(u));
  for (int u : ll.to_vector()) rows[u] ^= aa;
  for (int x : aa.to_vector()) rows[x] ^= ll;
  // The validating constructor rejects any asymmetric (inconsistent) edit.
  return Graph(std::move(rows));
}

SwitchedGraph build_switched(const HermitianGeometry& h, SwitchVariant variant,
                             int threads) {
  if (h.geom().n() < 4)
    throw std::invalid_argument("switched graphs require n >= 4");
  SwitchedGraph out;
  out.config = choose_config(h, variant);
  out.base = build_nu(h, threads);
  out.sets = compute_sets(h, out.base, out.config);
  out.report = verify_wqh_hypotheses(out.base.graph, out.sets);
  if (!out.report.ok)
    throw std::logic_error("switching hypotheses failed: " +
                           out.report.violation + " (vertex " +
                           std::to_string(out.report.witness) + ")");
  out.graph = apply_switch(out.base.graph, out.sets);
  return out;
}

SwitchedGraph build_switched(int n, int q, SwitchVariant variant, int threads) {
  if (n < 4)
    throw std::invalid_argument("switched graphs require n >= 4");
  return build_switched(HermitianGeometry::standard(n, q), variant, threads);
}

std::string switching_config_to_json(const SwitchingConfig& cfg) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["type"] = "switching-config";
  j["n"] = cfg.n;
  j["q"] = cfg.q;
  j["variant"] = to_string(cfg.variant);
  j["P"] = cfg.P;
  j["rep1"] = cfg.rep1;
  j["rep2"] = cfg.rep2;
  return j.dump(2) + "\n";
}

SwitchingConfig switching_config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("type") != "switching-config")
    throw std::invalid_argument("not a switching-config document");
  if (j.at("schema_version") != 1)
    throw std::invalid_argument("unsupported switching-config schema version");
  int n = j.at("n"), q = j.at("q");
  const HermitianGeometry& h = HermitianGeometry::standard(n, q);
  return make_config(h, switch_variant_from_string(j.at("variant")),
                     j.at("P"), j.at("rep1"), j.at("rep2"));
}

}  // namespace hermsrg
