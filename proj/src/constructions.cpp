#include "hermsrg/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hermsrg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

SrgParams nu_parameters(int n, long long q) {
  if (n < 2) throw std::invalid_argument("nu_parameters: n >= 2 required");
  const long long e = (n % 2 == 0) ? -1 : 1;  // (-1)^(n+1)
  SrgParams p;
  p.v = ipow(q, n) * (ipow(q, n + 1) - e) / (q + 1);
  p.k = (ipow(q, n) + e) * (ipow(q, n - 1) - e);
  p.lambda = ipow(q, 2 * n - 3) * (q + 1) - e * ipow(q, n - 1) * (q - 1) - 2;
  p.mu = ipow(q, n - 2) * (q + 1) * (ipow(q, n - 1) - e);
  return p;
}

PointGraph build_nu(const HermitianGeometry& h, int threads) {
  const ProjGeometry& g = h.geom();
  PointGraph pg;
  pg.point_vertex.assign(g.num_points(), -1);
  for (int p = 0; p < g.num_points(); ++p)
    if (!h.is_absolute(p)) {
      pg.point_vertex[p] = static_cast<int>(pg.vertex_point.size());
      pg.vertex_point.push_back(p);
    }
  const int nv = static_cast<int>(pg.vertex_point.size());
  pg.graph = build_graph(
      nv,
      [&](int i, int j) {
        return h.tangent_joined(pg.vertex_point[i], pg.vertex_point[j]);
      },
      threads);
  return pg;
}

PointGraph build_nu(int n, int q, int threads) {
  return build_nu(HermitianGeometry::standard(n, q), threads);
}

// ---------------------------------------------------------------------------
// Unitals

std::string Unital::describe() const {
  const FieldTable& F = PlaneGeometry::get(q).geom().field();
  std::ostringstream os;
  for (int i = 0; i < dual_depth; ++i) os << "dual(";
  switch (kind) {
    case UnitalKind::classical:
      os << "classical(q=" << q << ")";
      break;
    case UnitalKind::buekenhout_metz:
      os << (alt_model ? "bm-alt" : "bm") << "(q=" << q
         << ", alpha=" << F.to_string(alpha) << ", beta=" << F.to_string(beta) << ")";
      break;
    case UnitalKind::buekenhout_tits:
      os << "bt(q=" << q << ", beta=" << F.to_string(beta) << ")";
      break;
  }
  for (int i = 0; i < dual_depth; ++i) os << ")";
  return os.str();
}

Unital build_unital_classical(int q) {
  const HermitianGeometry& h = HermitianGeometry::standard(2, q);
  Unital u;
  u.q = q;
  u.kind = UnitalKind::classical;
  u.points = h.points();
  return u;
}

bool bm_params_valid(int q, Fel alpha, Fel beta, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (q <= 2) return fail("q > 2 required");
  const FieldTable& F = PlaneGeometry::get(q).geom().field();
  const FieldTable& sub = F.subfield();
  if (q % 2 == 1) {
    // (beta - beta^q)^2 + 4 alpha^(q+1) must be a non-square of GF(q).
    Fel d = F.sub(beta, F.conj(beta));
    Fel s = F.add(F.mul(d, d), F.mul(F.from_int(4), F.mul(alpha, F.conj(alpha))));
    Fel s_sub = F.project_subfield(s);  // fixed by x -> x^q, so in GF(q)
    if (is_square(sub, s_sub))
      return fail("(beta-beta^q)^2 + 4 alpha^(q+1) is a square in GF(q)");
    return true;
  }
  if (F.in_subfield(beta)) return fail("beta lies in GF(q)");
  // alpha^(q+1) / (beta + beta^q)^2 must have absolute trace 0.
  Fel t = F.project_subfield(F.add(beta, F.conj(beta)));  // nonzero: beta not in GF(q)
  Fel na = F.project_subfield(F.mul(alpha, F.conj(alpha)));
  Fel val = sub.div(na, sub.mul(t, t));
  if (absolute_trace(sub, val) != 0)
    return fail("alpha^(q+1)/(beta+beta^q)^2 has absolute trace 1");
  return true;
}

std::vector<std::pair<Fel, Fel>> bm_valid_pairs(int q) {
  const FieldTable& F = PlaneGeometry::get(q).geom().field();
  std::vector<std::pair<Fel, Fel>> out;
  for (int a = 0; a < F.order(); ++a)
    for (int b = 0; b < F.order(); ++b)
      if (bm_params_valid(q, static_cast<Fel>(a), static_cast<Fel>(b)))
        out.emplace_back(static_cast<Fel>(a), static_cast<Fel>(b));
  return out;
}

namespace {

Unital finish_unital(int q, UnitalKind kind, std::vector<int> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const long long expect = static_cast<long long>(q) * q * q + 1;
  if (static_cast<long long>(pts.size()) != expect)
    throw std::logic_error("unital construction: generated point set has wrong size");
  Unital u;
  u.q = q;
  u.kind = kind;
  u.points = std::move(pts);
  return u;
}

}  // namespace

Unital build_unital_bm(int q, Fel alpha, Fel beta) {
  std::string why;
  if (!bm_params_valid(q, alpha, beta, &why))
    throw std::invalid_argument("build_unital_bm: " + why);
  const ProjGeometry& g = PlaneGeometry::get(q).geom();
  const FieldTable& F = g.field();
  const FieldTable& sub = F.subfield();
  std::vector<int> pts;
  pts.reserve(static_cast<std::size_t>(q) * q * q + 1);
  for (int xi = 0; xi < F.order(); ++xi) {
    Fel x = static_cast<Fel>(xi);
    Fel base = F.add(F.mul(alpha, F.mul(x, x)), F.mul(beta, F.mul(x, F.conj(x))));
    for (int zi = 0; zi < sub.order(); ++zi) {
      Fel z = F.embed_subfield(static_cast<Fel>(zi));
      pts.push_back(g.index_of({x, F.add(base, z), F.one()}));
    }
  }
  pts.push_back(g.index_of({F.zero(), F.one(), F.zero()}));
  Unital u = finish_unital(q, UnitalKind::buekenhout_metz, std::move(pts));
  u.alpha = alpha;
  u.beta = beta;
  return u;
}

Unital build_unital_bm_alt(int q, Fel alpha, Fel beta) {
  if (q % 2 == 0)
    throw std::invalid_argument("build_unital_bm_alt: odd q required");
  std::string why;
  if (!bm_params_valid(q, alpha, beta, &why))
    throw std::invalid_argument("build_unital_bm_alt: " + why);
  const ProjGeometry& g = PlaneGeometry::get(q).geom();
  const FieldTable& F = g.field();
  const FieldTable& sub = F.subfield();
  const Fel m2a = F.neg(F.mul(F.from_int(2), alpha));       // -2 alpha
  const Fel dbeta = F.sub(F.conj(beta), beta);              // beta^q - beta
  std::vector<int> pts;
  pts.reserve(static_cast<std::size_t>(q) * q * q + 1);
  for (int xi = 0; xi < F.order(); ++xi) {
    Fel x = static_cast<Fel>(xi);
    Fel c0 = F.add(F.mul(m2a, x), F.mul(dbeta, F.conj(x)));
    Fel c2base = F.sub(F.mul(alpha, F.mul(x, x)),
                       F.mul(F.conj(beta), F.mul(x, F.conj(x))));
    for (int zi = 0; zi < sub.order(); ++zi) {
      Fel z = F.embed_subfield(static_cast<Fel>(zi));
      pts.push_back(g.index_of({c0, F.one(), F.sub(c2base, z)}));
    }
  }
  pts.push_back(g.index_of({F.zero(), F.zero(), F.one()}));
  Unital u = finish_unital(q, UnitalKind::buekenhout_metz, std::move(pts));
  u.alt_model = true;
  u.alpha = alpha;
  u.beta = beta;
  return u;
}

Unital build_unital_bt(int q) {
  int m = 0;
  for (int t = q; t > 1; t >>= 1) {
    if (t % 2 != 0) throw std::invalid_argument("build_unital_bt: q must be 2^m");
    ++m;
  }
  if ((1 << m) != q || m <= 1 || m % 2 == 0)
    throw std::invalid_argument("build_unital_bt: q = 2^m with odd m > 1 required");
  const ProjGeometry& g = PlaneGeometry::get(q).geom();
  const FieldTable& F = g.field();
  const FieldTable& sub = F.subfield();
  const int delta = 1 << ((m + 1) / 2);
  Fel beta = 0;
  while (F.in_subfield(beta)) ++beta;  // smallest index outside GF(q)
  std::vector<int> pts;
  pts.reserve(static_cast<std::size_t>(q) * q * q + 1);
  for (int i0 = 0; i0 < sub.order(); ++i0) {
    Fel x0 = F.embed_subfield(static_cast<Fel>(i0));
    for (int i1 = 0; i1 < sub.order(); ++i1) {
      Fel x1 = F.embed_subfield(static_cast<Fel>(i1));
      Fel c0 = F.add(x0, F.mul(x1, beta));
      Fel e = F.add(F.add(F.pow(x0, delta + 2), F.mul(x0, x1)), F.pow(x1, delta));
      Fel ybase = F.mul(e, beta);
      for (int iz = 0; iz < sub.order(); ++iz) {
        Fel z = F.embed_subfield(static_cast<Fel>(iz));
        pts.push_back(g.index_of({c0, F.add(ybase, z), F.one()}));
      }
    }
  }
  pts.push_back(g.index_of({F.zero(), F.one(), F.zero()}));
  Unital u = finish_unital(q, UnitalKind::buekenhout_tits, std::move(pts));
  u.beta = beta;
  return u;
}

UnitalCheck validate_unital(const Unital& u) {
  const PlaneGeometry& pg = u.plane();
  UnitalCheck r;
  const long long expect = static_cast<long long>(u.q) * u.q * u.q + 1;
  if (static_cast<long long>(u.points.size()) != expect) {
    r.violating_count = static_cast<long long>(u.points.size());
    return r;
  }
  Bitset mask(pg.num_points());
  for (int p : u.points) mask.set(p);
  for (int line = 0; line < pg.num_lines(); ++line) {
    long long c = Bitset::and_count(pg.line_mask(line), mask);
    if (c == 1) {
      ++r.tangent_lines;
    } else if (c == u.q + 1) {
      ++r.secant_lines;
    } else {
      r.violating_line = line;
      r.violating_count = c;
      return r;
    }
  }
  r.ok = r.tangent_lines == expect &&
         r.secant_lines == static_cast<long long>(u.q) * u.q * u.q * (u.q - 1) +
                               static_cast<long long>(u.q) * u.q;
  return r;
}

Unital dual_unital(const Unital& u) {
  const PlaneGeometry& pg = u.plane();
  Bitset mask(pg.num_points());
  for (int p : u.points) mask.set(p);
  std::vector<int> tangents;
  for (int line = 0; line < pg.num_lines(); ++line)
    if (Bitset::and_count(pg.line_mask(line), mask) == 1) tangents.push_back(line);
  Unital d = u;
  d.dual_depth = u.dual_depth + 1;
  d.points = std::move(tangents);  // line ids are point ids in the dual frame
  const long long expect = static_cast<long long>(u.q) * u.q * u.q + 1;
  if (static_cast<long long>(d.points.size()) != expect)
    throw std::logic_error("dual_unital: input is not a unital");
  return d;
}

PointGraph build_gamma_u(const Unital& u, int threads) {
  const PlaneGeometry& pg = u.plane();
  Bitset mask(pg.num_points());
  for (int p : u.points) mask.set(p);
  std::vector<char> tangent(pg.num_lines(), 0);
  for (int line = 0; line < pg.num_lines(); ++line)
    tangent[line] = Bitset::and_count(pg.line_mask(line), mask) == 1;

  PointGraph out;
  out.point_vertex.assign(pg.num_points(), -1);
  for (int p = 0; p < pg.num_points(); ++p)
    if (!mask.test(p)) {
      out.point_vertex[p] = static_cast<int>(out.vertex_point.size());
      out.vertex_point.push_back(p);
    }
  const int nv = static_cast<int>(out.vertex_point.size());
  out.graph = build_graph(
      nv,
      [&](int i, int j) {
        return tangent[pg.line_through(out.vertex_point[i], out.vertex_point[j])];
      },
      threads);
  return out;
}

// ---------------------------------------------------------------------------
// Dual configuration search

bool check_onan_config(const Unital& u, const OnanConfig& c, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  const PlaneGeometry& pg = u.plane();
  Bitset mask(pg.num_points());
  for (int p : u.points) mask.set(p);
  for (int i = 0; i < 4; ++i) {
    if (c.points[i] < 0 || c.points[i] >= pg.num_points())
      return fail("point index out of range");
    if (mask.test(c.points[i])) return fail("a configuration point lies on the unital");
    for (int j = i + 1; j < 4; ++j)
      if (c.points[i] == c.points[j]) return fail("configuration points not distinct");
  }
  std::vector<int> joins;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int line = pg.line_through(c.points[i], c.points[j]);
      if (Bitset::and_count(pg.line_mask(line), mask) != 1)
        return fail("a joining line is not tangent");
      joins.push_back(line);
    }
  std::sort(joins.begin(), joins.end());
  if (std::adjacent_find(joins.begin(), joins.end()) != joins.end())
    return fail("three of the points are collinear");
  std::array<int, 6> sorted_lines = c.lines;
  std::sort(sorted_lines.begin(), sorted_lines.end());
  for (int i = 0; i < 6; ++i)
    if (sorted_lines[i] != joins[i]) return fail("line list does not match the joins");
  return true;
}

namespace {

OnanConfig canonical_config(const PlaneGeometry& pg, std::array<int, 4> pts) {
  std::sort(pts.begin(), pts.end());
  OnanConfig c;
  c.points = pts;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) c.lines[k++] = pg.line_through(pts[i], pts[j]);
  std::sort(c.lines.begin(), c.lines.end());
  return c;
}

// The explicit six-line family stated for the alternate Buekenhout-Metz
// model (odd q): for suitable lambda_1, lambda_2 in GF(q) the lines
// [0,0,1], [0, -2 x1 x2, x1 + x2], [x_i, -x_i, 1], [-x_i, -x_i, 1] are all
// tangent and pairwise meet in four external points.
std::optional<OnanConfig> seeded_family_config(const Unital& u) {
  const PlaneGeometry& pg = u.plane();
  const ProjGeometry& g = pg.geom();
  const FieldTable& F = g.field();
  const FieldTable& sub = F.subfield();
  const Fel aconj = F.conj(u.alpha);
  const Fel na = F.mul(u.alpha, aconj);             // alpha^(q+1)
  const Fel nb = F.mul(u.beta, F.conj(u.beta));     // beta^(q+1)
  for (int i1 = 0; i1 < sub.order(); ++i1) {
    const Fel l1 = F.embed_subfield(static_cast<Fel>(i1));
    for (int i2 = i1 + 1; i2 < sub.order(); ++i2) {
      const Fel l2 = F.embed_subfield(static_cast<Fel>(i2));
      // Compatibility equation over GF(q):
      // (l1+a^q-b)^(q+1) (a^(q+1)-b^(q+1)-l2^2)
      //   + (l2+a^q-b)^(q+1) (a^(q+1)-b^(q+1)-l1^2) = 0.
      auto nrm = [&](Fel x) { return F.mul(x, F.conj(x)); };
      Fel t1 = F.add(l1, F.sub(aconj, u.beta));
      Fel t2 = F.add(l2, F.sub(aconj, u.beta));
      Fel w1 = F.sub(F.sub(na, nb), F.mul(l1, l1));
      Fel w2 = F.sub(F.sub(na, nb), F.mul(l2, l2));
      if (F.add(F.mul(nrm(t1), w2), F.mul(nrm(t2), w1)) != F.zero()) continue;
      // x_lambda_i = -(alpha^q + lambda_i - beta)/(alpha^(q+1)-(lambda_i-beta)^(q+1))
      Fel d1 = F.sub(na, nrm(F.sub(l1, u.beta)));
      Fel d2 = F.sub(na, nrm(F.sub(l2, u.beta)));
      if (d1 == F.zero() || d2 == F.zero()) continue;
      Fel x1 = F.neg(F.div(t1, d1));
      Fel x2 = F.neg(F.div(t2, d2));
      std::vector<std::vector<Fel>> linevecs = {
          {F.zero(), F.zero(), F.one()},
          {F.zero(), F.neg(F.mul(F.from_int(2), F.mul(x1, x2))), F.add(x1, x2)},
          {x1, F.neg(x1), F.one()},
          {x2, F.neg(x2), F.one()},
          {F.neg(x1), F.neg(x1), F.one()},
          {F.neg(x2), F.neg(x2), F.one()}};
      std::set<int> lines;
      bool bad = false;
      for (const auto& v : linevecs) {
        if (v[0] == F.zero() && v[1] == F.zero() && v[2] == F.zero()) {
          bad = true;
          break;
        }
        lines.insert(g.index_of(v));
      }
      if (bad || lines.size() != 6) continue;
      // Configuration points: pairwise meets lying on exactly three lines.
      std::vector<int> ids(lines.begin(), lines.end());
      std::set<int> meet_pts;
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
          meet_pts.insert(pg.line_through(ids[a], ids[b]));  // dual cross product
      std::vector<int> config_pts;
      for (int p : meet_pts) {
        int onc = 0;
        for (int line : ids)
          if (pg.incident(p, line)) ++onc;
        if (onc == 3) config_pts.push_back(p);
      }
      if (config_pts.size() != 4) continue;
      OnanConfig c = canonical_config(
          pg, {config_pts[0], config_pts[1], config_pts[2], config_pts[3]});
      c.route = "seeded-family";
      if (check_onan_config(u, c)) return c;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string unital_to_text(const Unital& u) {
  std::ostringstream os;
  os << "unital 1\n";
  os << "q " << u.q << "\n";
  const char* kind = u.kind == UnitalKind::classical ? "classical"
                     : u.kind == UnitalKind::buekenhout_metz
                         ? (u.alt_model ? "bm-alt" : "bm")
                         : "bt";
  os << "kind " << kind << "\n";
  os << "dual-depth " << u.dual_depth << "\n";
  os << "alpha " << static_cast<int>(u.alpha) << "\n";
  os << "beta " << static_cast<int>(u.beta) << "\n";
  os << "points " << u.points.size() << "\n";
  for (int p : u.points) os << p << "\n";
  return os.str();
}

Unital unital_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string key;
  int version = 0;
  is >> key >> version;
  if (key != "unital" || version != 1)
    throw std::invalid_argument("unital_from_text: bad header");
  Unital u;
  std::size_t npts = 0;
  std::string kind;
  while (is >> key) {
    if (key == "q") {
      is >> u.q;
    } else if (key == "kind") {
      is >> kind;
    } else if (key == "dual-depth") {
      is >> u.dual_depth;
    } else if (key == "alpha") {
      int v;
      is >> v;
      u.alpha = static_cast<Fel>(v);
    } else if (key == "beta") {
      int v;
      is >> v;
      u.beta = static_cast<Fel>(v);
    } else if (key == "points") {
      is >> npts;
      break;
    } else {
      throw std::invalid_argument("unital_from_text: unknown key " + key);
    }
  }
  if (u.q < 2 || npts == 0)
    throw std::invalid_argument("unital_from_text: missing q or points");
  if (kind == "classical") {
    u.kind = UnitalKind::classical;
  } else if (kind == "bm" || kind == "bm-alt") {
    u.kind = UnitalKind::buekenhout_metz;
    u.alt_model = kind == "bm-alt";
  } else if (kind == "bt") {
    u.kind = UnitalKind::buekenhout_tits;
  } else {
    throw std::invalid_argument("unital_from_text: unknown kind " + kind);
  }
  u.points.resize(npts);
  const int np = PlaneGeometry::get(u.q).num_points();
  for (std::size_t i = 0; i < npts; ++i) {
    if (!(is >> u.points[i]))
      throw std::invalid_argument("unital_from_text: truncated point list");
    if (u.points[i] < 0 || u.points[i] >= np)
      throw std::invalid_argument("unital_from_text: point index out of range");
  }
  if (!std::is_sorted(u.points.begin(), u.points.end()))
    throw std::invalid_argument("unital_from_text: points not sorted");
  return u;
}

std::optional<OnanConfig> find_dual_onan(const Unital& u) {
  if (u.kind == UnitalKind::buekenhout_metz && u.alt_model && u.q % 2 == 1 &&
      u.alpha != 0) {
    if (auto c = seeded_family_config(u)) return c;
  }
  // Pruned exhaustive scan: ascending 4-tuples of external points that are
  // pairwise joined by tangent lines, rejecting repeated joining lines
  // (a repeat means three collinear points).
  const PlaneGeometry& pg = u.plane();
  const int np = pg.num_points();
  Bitset mask(np);
  for (int p : u.points) mask.set(p);
  std::vector<char> tangent(pg.num_lines(), 0);
  for (int line = 0; line < pg.num_lines(); ++line)
    tangent[line] = Bitset::and_count(pg.line_mask(line), mask) == 1;
  std::vector<int> ext;
  for (int p = 0; p < np; ++p)
    if (!mask.test(p)) ext.push_back(p);
  const int ne = static_cast<int>(ext.size());
  // Adjacency over external points under "joining line is tangent".
  std::vector<Bitset> adj(ne, Bitset(ne));
  for (int i = 0; i < ne; ++i)
    for (int j = i + 1; j < ne; ++j)
      if (tangent[pg.line_through(ext[i], ext[j])]) {
        adj[i].set(j);
        adj[j].set(i);
      }
  for (int a = 0; a < ne; ++a) {
    Bitset ca = adj[a];
    for (int b = a + 1; b < ne; ++b) {
      if (!ca.test(b)) continue;
      int lab = pg.line_through(ext[a], ext[b]);
      Bitset cab = ca;
      cab &= adj[b];
      bool found = false;
      OnanConfig out;
      cab.for_each([&](int c) {
        if (found || c <= b) return;
        int lac = pg.line_through(ext[a], ext[c]);
        int lbc = pg.line_through(ext[b], ext[c]);
        if (lac == lab || lbc == lab || lac == lbc) return;  // collinear triple
        Bitset cabc = cab;
        cabc &= adj[c];
        cabc.for_each([&](int d) {
          if (found || d <= c) return;
          int lad = pg.line_through(ext[a], ext[d]);
          int lbd = pg.line_through(ext[b], ext[d]);
          int lcd = pg.line_through(ext[c], ext[d]);
          std::array<int, 6> ls = {lab, lac, lbc, lad, lbd, lcd};
          std::sort(ls.begin(), ls.end());
          if (std::adjacent_find(ls.begin(), ls.end()) != ls.end()) return;
          out = canonical_config(pg, {ext[a], ext[b], ext[c], ext[d]});
          out.route = "exhaustive";
          found = true;
        });
      });
      if (found) return out;
    }
  }
  return std::nullopt;
}

}  // namespace hermsrg
