#include "hermsrg/plane.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

namespace hermsrg {

PlaneGeometry::PlaneGeometry(int q) : g_(ProjGeometry::get(2, q)) {
  const int N = g_.num_points();
  line_points_.resize(N);
  point_lines_.resize(N);
  line_masks_.assign(N, Bitset(N));
  for (int l = 0; l < N; ++l) {
    line_points_[l] = g_.subspace_points(g_.hyperplane(g_.point_vec(l)));
    if (static_cast<int>(line_points_[l].size()) != g_.field().order() + 1)
      throw std::logic_error("PlaneGeometry: bad line size");
    for (int p : line_points_[l]) {
      point_lines_[p].push_back(l);
      line_masks_[l].set(p);
    }
  }
  for (int p = 0; p < N; ++p)
    if (static_cast<int>(point_lines_[p].size()) != g_.field().order() + 1)
      throw std::logic_error("PlaneGeometry: bad pencil size");
}

const PlaneGeometry& PlaneGeometry::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PlaneGeometry>> reg;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find(q);
    if (it != reg.end()) return *it->second;
  }
  auto fresh = std::unique_ptr<PlaneGeometry>(new PlaneGeometry(q));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = reg.try_emplace(q, std::move(fresh));
  return *it->second;
}

int PlaneGeometry::line_through(int p, int r) const {
  if (p == r) throw std::invalid_argument("line_through: equal points");
  const FieldTable& F = g_.field();
  const Fel* P = g_.point(p);
  const Fel* R = g_.point(r);
  Fel c[3] = {F.sub(F.mul(P[1], R[2]), F.mul(P[2], R[1])),
              F.sub(F.mul(P[2], R[0]), F.mul(P[0], R[2])),
              F.sub(F.mul(P[0], R[1]), F.mul(P[1], R[0]))};
  int l = g_.index_of_raw(c);
  if (l < 0) throw std::logic_error("line_through: null cross product");
  return l;
}

bool PlaneGeometry::incident(int point, int line) const {
  return line_masks_[line].test(point);
}

std::vector<std::vector<int>> PlaneGeometry::baer_sublines_of_line(
    int line) const {
  const std::vector<int>& pts = line_points_[line];
  std::set<std::vector<int>> out;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      for (size_t k = j + 1; k < pts.size(); ++k)
        out.insert(g_.baer_subline(pts[i], pts[j], pts[k]));
  return {out.begin(), out.end()};
}

std::vector<std::vector<int>> PlaneGeometry::dual_baer_sublines_at(
    int point) const {
  const std::vector<int>& ls = point_lines_[point];
  std::set<std::vector<int>> out;
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t j = i + 1; j < ls.size(); ++j)
      for (size_t k = j + 1; k < ls.size(); ++k)
        out.insert(g_.baer_subline(ls[i], ls[j], ls[k]));
  return {out.begin(), out.end()};
}

std::vector<Pencil> pencils_at(const PlaneGeometry& pg, int vertex) {
  const int q = pg.q();
  std::vector<Pencil> out;
  for (const std::vector<int>& lines : pg.dual_baer_sublines_at(vertex)) {
    Pencil p;
    p.vertex = vertex;
    p.lines = lines;
    Bitset mask(pg.num_points());
    for (int l : lines) mask |= pg.line_mask(l);
    p.points = mask.to_vector();
    if (static_cast<int>(p.points.size()) != q * q * q + q * q + 1)
      throw std::logic_error("pencils_at: wrong union size");
    out.push_back(std::move(p));
  }
  if (static_cast<int>(out.size()) != q * (q * q + 1))
    throw std::logic_error("pencils_at: wrong pencil count");
  return out;
}

PlaneChart PlaneChart::build(const ProjGeometry& ambient,
                             const Subspace& plane) {
  if (plane.rank() != 3)
    throw std::invalid_argument("PlaneChart: subspace is not a plane");
  PlaneChart chart;
  chart.ambient = &ambient;
  chart.local = &PlaneGeometry::get(ambient.q());
  const ProjGeometry& lg = chart.local->geom();
  const FieldTable& F = ambient.field();
  const int d = ambient.dims();
  chart.to_ambient.resize(lg.num_points());
  Fel v[8];
  for (int i = 0; i < lg.num_points(); ++i) {
    const Fel* c = lg.point(i);
    for (int col = 0; col < d; ++col) {
      Fel sum = F.zero();
      for (int r = 0; r < 3; ++r)
        sum = F.add(sum, F.mul(c[r], plane.basis.at(r, col)));
      v[col] = sum;
    }
    int idx = ambient.index_of_raw(v);
    if (idx < 0) throw std::logic_error("PlaneChart: point not interned");
    chart.to_ambient[i] = idx;
    chart.to_local.emplace(idx, i);
  }
  if (chart.to_local.size() != chart.to_ambient.size())
    throw std::logic_error("PlaneChart: chart is not injective");
  return chart;
}

std::optional<Mat> recognize_hermitian_curve(const PlaneGeometry& pg,
                                             const std::vector<int>& points) {
  const ProjGeometry& g = pg.geom();
  const FieldTable& F = g.field();
  const FieldTable& Fq = F.subfield();
  const long long q = pg.q();
  if (static_cast<long long>(points.size()) != q * q * q + 1) return std::nullopt;
  // Unknowns over GF(q): three diagonal entries, then (real, theta) parts of
  // the three upper off-diagonal entries, theta = the generator of GF(q^2).
  const Fel theta = F.gen();
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Mat sys(0, 9);
  for (int p : points) {
    const Fel* P = g.point(p);
    Fel row[9];
    for (int r = 0; r < 3; ++r)
      row[r] = F.norm(P[r]);  // coefficient of d_r: P_r^(q+1), in GF(q)
    for (int t = 0; t < 3; ++t) {
      Fel m = F.mul(P[pairs[t][0]], F.conj(P[pairs[t][1]]));
      row[3 + 2 * t] = F.trace(m);
      row[3 + 2 * t + 1] = F.trace(F.mul(theta, m));
    }
    // Append and reduce; keep the system in RREF with at most 9 pivot rows.
    for (int c = 0; c < 9; ++c) sys.at(sys.rows, c) = row[c];
    ++sys.rows;
    sys.rows = rref(sys, Fq);
    if (sys.rows == 9) return std::nullopt;  // only the zero form vanishes
  }
  if (sys.rows != 8) return std::nullopt;  // form not unique up to scalar
  Mat ker = nullspace(sys, Fq);
  if (ker.rows != 1) return std::nullopt;
  Mat gram(3, 3);
  for (int r = 0; r < 3; ++r) gram.at(r, r) = F.embed_subfield(ker.at(0, r));
  for (int t = 0; t < 3; ++t) {
    Fel val = F.add(F.embed_subfield(ker.at(0, 3 + 2 * t)),
                    F.mul(theta, F.embed_subfield(ker.at(0, 3 + 2 * t + 1))));
    gram.at(pairs[t][0], pairs[t][1]) = val;
    gram.at(pairs[t][1], pairs[t][0]) = F.conj(val);
  }
  if (mat_det(gram, F) == F.zero()) return std::nullopt;
  // The zero set of a nonsingular Hermitian Gram has exactly q^3 + 1 points
  // and contains the input by construction, so set equality still deserves a
  // direct check.
  HermitianGeometry h(g, gram);
  if (h.size() != q * q * q + 1) return std::nullopt;
  for (int p : points)
    if (!h.is_absolute(p)) return std::nullopt;
  return gram;
}

}  // namespace hermsrg
