#include "hermsrg/projgeom.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

namespace hermsrg {

namespace {

Fel dot(const Fel* x, const Fel* y, int d, const FieldTable& F) {
  Fel s = 0;
  for (int r = 0; r < d; ++r) s = F.add(s, F.mul(x[r], y[r]));
  return s;
}

// Smallest prime factor; q must be a prime power p^e with p^(2e) <= 81.
void prime_power(int q, int& p, int& e) {
  if (q < 2) throw std::invalid_argument("projgeom: q must be at least 2");
  p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  e = 0;
  int t = q;
  while (t % p == 0) {
    t /= p;
    ++e;
  }
  if (t != 1)
    throw std::invalid_argument("projgeom: q = " + std::to_string(q) +
                                " is not a prime power");
}

}  // namespace

int rref(Mat& m, const FieldTable& F) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, col) != F.zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    Fel inv = F.inv(m.at(rank, col));
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank) continue;
      Fel f = m.at(i, col);
      if (f == F.zero()) continue;
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

Mat nullspace(const Mat& m, const FieldTable& F) {
  Mat r = m;
  int rank = rref(r, F);
  // Pivot column of each of the first `rank` rows.
  std::vector<int> pivot(rank);
  std::vector<bool> is_pivot(m.cols, false);
  for (int i = 0; i < rank; ++i) {
    int j = 0;
    while (r.at(i, j) == F.zero()) ++j;
    pivot[i] = j;
    is_pivot[j] = true;
  }
  Mat ker(m.cols - rank, m.cols);
  int row = 0;
  for (int fcol = 0; fcol < m.cols; ++fcol) {
    if (is_pivot[fcol]) continue;
    ker.at(row, fcol) = F.one();
    for (int i = 0; i < rank; ++i)
      ker.at(row, pivot[i]) = F.neg(r.at(i, fcol));
    ++row;
  }
  rref(ker, F);  // canonical basis
  return ker;
}

Mat mat_mul(const Mat& a, const Mat& b, const FieldTable& F) {
  if (a.cols != b.rows) throw std::logic_error("mat_mul: shape mismatch");
  Mat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      Fel v = a.at(i, k);
      if (v == F.zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = F.add(c.at(i, j), F.mul(v, b.at(k, j)));
    }
  return c;
}

Mat mat_transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Mat mat_frobenius(const Mat& a, const FieldTable& F, int q) {
  Mat t(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      t.at(i, j) = (a.at(i, j) == F.zero()) ? F.zero() : F.pow(a.at(i, j), q);
  return t;
}

Fel mat_det(const Mat& a, const FieldTable& F) {
  if (a.rows != a.cols) throw std::logic_error("mat_det: not square");
  Mat m = a;
  Fel det = F.one();
  for (int col = 0; col < m.cols; ++col) {
    int piv = -1;
    for (int i = col; i < m.rows; ++i)
      if (m.at(i, col) != F.zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return F.zero();
    if (piv != col) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(col, col));
    Fel inv = F.inv(m.at(col, col));
    for (int i = col + 1; i < m.rows; ++i) {
      Fel f = F.mul(m.at(i, col), inv);
      if (f == F.zero()) continue;
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(col, j)));
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// ProjGeometry

ProjGeometry::ProjGeometry(int n, int q)
    : n_(n),
      q_(q),
      dims_(n + 1),
      F_([&]() -> const FieldTable& {
        int p, e;
        prime_power(q, p, e);
        return FieldTable::get(p, 2 * e);
      }()) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("projgeom: n must be between 1 and 5");
  enumerate_points();
}

void ProjGeometry::enumerate_points() {
  const int order = F_.order();  // q^2
  long long expected = 0, pw = 1;
  for (int i = 0; i <= n_; ++i) {
    expected += pw;
    pw *= order;
  }
  coords_.reserve(expected * dims_);
  std::vector<Fel> v(dims_, F_.zero());
  // Leading zeros first: the first nonzero coordinate walks from the last
  // position to the first; the tail after it counts lexicographically with
  // the leftmost tail position most significant.
  for (int f = n_; f >= 0; --f) {
    std::fill(v.begin(), v.end(), F_.zero());
    v[f] = F_.one();
    while (true) {
      coords_.insert(coords_.end(), v.begin(), v.end());
      int pos = n_;
      while (pos > f && v[pos] == static_cast<Fel>(order - 1)) {
        v[pos] = 0;
        --pos;
      }
      if (pos == f) break;
      ++v[pos];
    }
  }
  num_points_ = static_cast<int>(coords_.size()) / dims_;
  if (num_points_ != expected)
    throw std::logic_error("projgeom: point enumeration miscounted");
  keys_.resize(num_points_);
  key_index_.resize(num_points_);
  std::vector<std::pair<std::uint64_t, std::int32_t>> kv(num_points_);
  for (int i = 0; i < num_points_; ++i) kv[i] = {pack(point(i)), i};
  std::sort(kv.begin(), kv.end());
  for (int i = 1; i < num_points_; ++i)
    if (kv[i].first == kv[i - 1].first)
      throw std::logic_error("projgeom: duplicate point key");
  for (int i = 0; i < num_points_; ++i) {
    keys_[i] = kv[i].first;
    key_index_[i] = kv[i].second;
  }
}

std::uint64_t ProjGeometry::pack(const Fel* v) const {
  std::uint64_t key = 0;
  for (int i = dims_ - 1; i >= 0; --i)
    key = key * FieldTable::kMaxOrder + v[i];
  return key;
}

const ProjGeometry& ProjGeometry::get(int n, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<ProjGeometry>> reg;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find({n, q});
    if (it != reg.end()) return *it->second;
  }
  auto fresh = std::unique_ptr<ProjGeometry>(new ProjGeometry(n, q));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = reg.try_emplace({n, q}, std::move(fresh));
  return *it->second;
}

int ProjGeometry::index_of(const std::vector<Fel>& v) const {
  if (static_cast<int>(v.size()) != dims_)
    throw std::invalid_argument("index_of: wrong coordinate count");
  return index_of_raw(v.data());
}

int ProjGeometry::index_of_raw(const Fel* v) const {
  Fel norm[8];
  int f = -1;
  for (int i = 0; i < dims_; ++i)
    if (v[i] != F_.zero()) {
      f = i;
      break;
    }
  if (f < 0) return -1;
  Fel inv = F_.inv(v[f]);
  for (int i = 0; i < dims_; ++i) norm[i] = F_.mul(v[i], inv);
  std::uint64_t key = pack(norm);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return -1;
  return key_index_[it - keys_.begin()];
}

std::vector<int> ProjGeometry::line_points(int i, int j) const {
  if (i == j) throw std::invalid_argument("line_points: equal points");
  const Fel* A = point(i);
  const Fel* B = point(j);
  std::vector<int> out;
  out.reserve(F_.order() + 1);
  out.push_back(j);
  Fel v[8];
  for (int t = 0; t < F_.order(); ++t) {
    for (int r = 0; r < dims_; ++r)
      v[r] = F_.add(A[r], F_.mul(static_cast<Fel>(t), B[r]));
    int idx = index_of_raw(v);
    if (idx < 0) throw std::logic_error("line_points: point not interned");
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ProjGeometry::collinear(int i, int j, int k) const {
  Mat m(3, dims_);
  const int pts[3] = {i, j, k};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < dims_; ++c) m.at(r, c) = point(pts[r])[c];
  return rref(m, F_) <= 2;
}

Subspace ProjGeometry::span_of_points(const std::vector<int>& pts) const {
  Mat cur(0, dims_);
  for (int p : pts) {
    if (cur.rows == Mat::kMaxRows) {
      int r = rref(cur, F_);
      cur.rows = r;
    }
    for (int c = 0; c < dims_; ++c) cur.at(cur.rows, c) = point(p)[c];
    ++cur.rows;
  }
  int r = rref(cur, F_);
  cur.rows = r;
  return Subspace{cur};
}

Subspace ProjGeometry::hyperplane(const std::vector<Fel>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != dims_)
    throw std::invalid_argument("hyperplane: wrong coefficient count");
  Mat m(1, dims_);
  for (int c = 0; c < dims_; ++c) m.at(0, c) = coeffs[c];
  return Subspace{nullspace(m, F_)};
}

bool ProjGeometry::subspace_contains(const Subspace& s, int pt) const {
  // Reduce the point against the RREF basis and test for zero.
  Fel v[8];
  const Fel* P = point(pt);
  for (int c = 0; c < dims_; ++c) v[c] = P[c];
  for (int i = 0; i < s.basis.rows; ++i) {
    int lead = 0;
    while (lead < dims_ && s.basis.at(i, lead) == F_.zero()) ++lead;
    if (lead == dims_) continue;
    Fel f = v[lead];
    if (f == F_.zero()) continue;
    for (int c = lead; c < dims_; ++c)
      v[c] = F_.sub(v[c], F_.mul(f, s.basis.at(i, c)));
  }
  for (int c = 0; c < dims_; ++c)
    if (v[c] != F_.zero()) return false;
  return true;
}

std::vector<int> ProjGeometry::subspace_points(const Subspace& s) const {
  const int r = s.basis.rows;
  const int order = F_.order();
  std::vector<int> out;
  if (r == 0) return out;
  std::vector<Fel> coef(r, F_.zero());
  Fel v[8];
  for (int f = r - 1; f >= 0; --f) {
    std::fill(coef.begin(), coef.end(), F_.zero());
    coef[f] = F_.one();
    while (true) {
      for (int c = 0; c < dims_; ++c) {
        Fel sum = F_.zero();
        for (int i = f; i < r; ++i)
          sum = F_.add(sum, F_.mul(coef[i], s.basis.at(i, c)));
        v[c] = sum;
      }
      int idx = index_of_raw(v);
      if (idx < 0) throw std::logic_error("subspace_points: point not interned");
      out.push_back(idx);
      int pos = r - 1;
      while (pos > f && coef[pos] == static_cast<Fel>(order - 1)) {
        coef[pos] = 0;
        --pos;
      }
      if (pos == f) break;
      ++coef[pos];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace ProjGeometry::meet(const Subspace& s, const Subspace& t) const {
  Mat anns = nullspace(s.basis, F_);
  Mat annt = nullspace(t.basis, F_);
  Mat stacked(anns.rows + annt.rows, dims_);
  for (int i = 0; i < anns.rows; ++i)
    for (int c = 0; c < dims_; ++c) stacked.at(i, c) = anns.at(i, c);
  for (int i = 0; i < annt.rows; ++i)
    for (int c = 0; c < dims_; ++c) stacked.at(anns.rows + i, c) = annt.at(i, c);
  return Subspace{nullspace(stacked, F_)};
}

void ProjGeometry::for_each_subspace(
    int d, const std::function<bool(const Subspace&)>& fn) const {
  const int r = d + 1, c = dims_;
  if (d < 0 || r > c)
    throw std::invalid_argument("for_each_subspace: bad dimension");
  const int order = F_.order();
  std::vector<int> piv(r);
  for (int i = 0; i < r; ++i) piv[i] = i;
  while (true) {
    std::vector<bool> is_piv(c, false);
    for (int i = 0; i < r; ++i) is_piv[piv[i]] = true;
    // Free cells in row-major order; the last one varies fastest.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < r; ++i)
      for (int j = piv[i] + 1; j < c; ++j)
        if (!is_piv[j]) cells.emplace_back(i, j);
    Mat m(r, c);
    for (int i = 0; i < r; ++i) m.at(i, piv[i]) = F_.one();
    std::vector<Fel> val(cells.size(), F_.zero());
    while (true) {
      for (size_t t = 0; t < cells.size(); ++t)
        m.at(cells[t].first, cells[t].second) = val[t];
      if (!fn(Subspace{m})) return;
      int pos = static_cast<int>(cells.size()) - 1;
      while (pos >= 0 && val[pos] == static_cast<Fel>(order - 1)) {
        val[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++val[pos];
    }
    // Next pivot combination in lexicographic order.
    int i = r - 1;
    while (i >= 0 && piv[i] == c - r + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
}

long long ProjGeometry::count_subspaces(int d) const {
  const int r = d + 1, c = dims_;
  if (d < 0 || r > c)
    throw std::invalid_argument("count_subspaces: bad dimension");
  const long long Q = F_.order();
  // Gaussian binomial [c, r]_Q via the Pascal recurrence
  // [m, k] = [m-1, k-1] + Q^k [m-1, k].
  __int128 table[9][9] = {};
  for (int m = 0; m <= c; ++m) {
    table[m][0] = 1;
    for (int k = 1; k <= m; ++k) {
      __int128 pk = 1;
      for (int t = 0; t < k; ++t) pk *= Q;
      table[m][k] = table[m - 1][k - 1] + pk * table[m - 1][k];
    }
  }
  return static_cast<long long>(table[c][r]);
}

std::vector<int> ProjGeometry::baer_subline(int i, int j, int k) const {
  if (i == j || j == k || i == k)
    throw std::invalid_argument("baer_subline: points must be distinct");
  const Fel* A = point(i);
  const Fel* B = point(j);
  const Fel* C = point(k);
  int c1 = -1, c2 = -1;
  Fel det = F_.zero();
  for (int x = 0; x < dims_ && c1 < 0; ++x)
    for (int y = x + 1; y < dims_; ++y) {
      Fel d = F_.sub(F_.mul(A[x], B[y]), F_.mul(A[y], B[x]));
      if (d != F_.zero()) {
        c1 = x;
        c2 = y;
        det = d;
        break;
      }
    }
  if (c1 < 0) throw std::logic_error("baer_subline: degenerate point pair");
  Fel a = F_.div(F_.sub(F_.mul(C[c1], B[c2]), F_.mul(C[c2], B[c1])), det);
  Fel b = F_.div(F_.sub(F_.mul(A[c1], C[c2]), F_.mul(A[c2], C[c1])), det);
  Fel v[8];
  for (int r = 0; r < dims_; ++r)
    v[r] = F_.add(F_.mul(a, A[r]), F_.mul(b, B[r]));
  if (index_of_raw(v) != k)
    throw std::invalid_argument("baer_subline: points are not collinear");
  Fel cc = F_.div(b, a);
  std::vector<int> out;
  out.reserve(q_ + 1);
  out.push_back(j);
  for (Fel t = 0; t < static_cast<Fel>(q_); ++t) {
    Fel coef = F_.mul(F_.embed_subfield(t), cc);
    for (int r = 0; r < dims_; ++r)
      v[r] = F_.add(A[r], F_.mul(coef, B[r]));
    int idx = index_of_raw(v);
    if (idx < 0) throw std::logic_error("baer_subline: point not interned");
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// HermitianGeometry

HermitianGeometry::HermitianGeometry(const ProjGeometry& g, const Mat& gram)
    : g_(g), gram_(gram), absolute_(g.num_points()) {
  const FieldTable& F = g.field();
  const int d = g.dims();
  if (gram.rows != d || gram.cols != d)
    throw std::invalid_argument("HermitianGeometry: Gram shape mismatch");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (F.conj(gram.at(j, i)) != gram.at(i, j))
        throw std::invalid_argument("HermitianGeometry: Gram is not Hermitian");
  if (mat_det(gram, F) == F.zero())
    throw std::invalid_argument("HermitianGeometry: Gram is singular");
  const int N = g.num_points();
  gp_.resize(static_cast<size_t>(N) * d);
  hself_.resize(N);
  Fel pc[8];
  for (int idx = 0; idx < N; ++idx) {
    const Fel* P = g.point(idx);
    for (int c = 0; c < d; ++c) pc[c] = F.conj(P[c]);
    Fel* gp = &gp_[static_cast<size_t>(idx) * d];
    for (int r = 0; r < d; ++r) {
      Fel sum = F.zero();
      for (int c = 0; c < d; ++c) sum = F.add(sum, F.mul(gram.at(r, c), pc[c]));
      gp[r] = sum;
    }
    hself_[idx] = dot(P, gp, d, F);
    if (hself_[idx] == F.zero()) {
      absolute_.set(idx);
      h_points_.push_back(idx);
    }
  }
}

const HermitianGeometry& HermitianGeometry::standard(int n, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<HermitianGeometry>> reg;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find({n, q});
    if (it != reg.end()) return *it->second;
  }
  const ProjGeometry& g = ProjGeometry::get(n, q);
  auto fresh = std::make_unique<HermitianGeometry>(g, Mat::identity(n + 1));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = reg.try_emplace({n, q}, std::move(fresh));
  return *it->second;
}

Fel HermitianGeometry::form(int i, int j) const {
  return dot(g_.point(i), &gp_[static_cast<size_t>(j) * g_.dims()], g_.dims(),
             g_.field());
}

LineClass HermitianGeometry::classify_line(int i, int j) const {
  const FieldTable& F = g_.field();
  Fel g11 = hself_[i], g22 = hself_[j], g12 = form(i, j);
  Fel det = F.sub(F.mul(g11, g22), F.mul(g12, F.conj(g12)));
  if (det != F.zero()) return LineClass::secant;
  if (g11 == F.zero() && g22 == F.zero() && g12 == F.zero())
    return LineClass::generator;
  return LineClass::tangent;
}

int HermitianGeometry::absolute_points_on_line(int i, int j) const {
  // Deliberately avoids the restricted-Gram shortcut: walks the interned
  // points of the line and evaluates h(P, P) afresh for each.
  const FieldTable& F = g_.field();
  const int d = g_.dims();
  int count = 0;
  for (int p : g_.line_points(i, j)) {
    const Fel* P = g_.point(p);
    Fel pc[8];
    for (int c = 0; c < d; ++c) pc[c] = F.conj(P[c]);
    Fel h = F.zero();
    for (int r = 0; r < d; ++r) {
      Fel row = F.zero();
      for (int c = 0; c < d; ++c) row = F.add(row, F.mul(gram_.at(r, c), pc[c]));
      h = F.add(h, F.mul(P[r], row));
    }
    if (h == F.zero()) ++count;
  }
  return count;
}

std::vector<Fel> HermitianGeometry::polar_coeffs(int i) const {
  const Fel* gp = &gp_[static_cast<size_t>(i) * g_.dims()];
  return {gp, gp + g_.dims()};
}

Subspace HermitianGeometry::polar_point(int i) const {
  return g_.hyperplane(polar_coeffs(i));
}

Subspace HermitianGeometry::polar_of(const Subspace& s) const {
  const FieldTable& F = g_.field();
  const int d = g_.dims();
  Mat funcs(s.basis.rows, d);
  for (int i = 0; i < s.basis.rows; ++i) {
    Fel pc[8];
    for (int c = 0; c < d; ++c) pc[c] = F.conj(s.basis.at(i, c));
    for (int r = 0; r < d; ++r) {
      Fel sum = F.zero();
      for (int c = 0; c < d; ++c)
        sum = F.add(sum, F.mul(gram_.at(r, c), pc[c]));
      funcs.at(i, r) = sum;
    }
  }
  return Subspace{nullspace(funcs, F)};
}

PlaneSection HermitianGeometry::classify_plane(const Subspace& plane) const {
  if (g_.n() != 4)
    throw std::invalid_argument("classify_plane: requires PG(4, q^2)");
  if (plane.rank() != 3)
    throw std::invalid_argument("classify_plane: not a plane");
  Subspace polar = polar_of(plane);
  if (polar.rank() != 2) throw std::logic_error("classify_plane: bad polar");
  int i = g_.index_of_raw(&polar.basis.a[0]);
  int j = g_.index_of_raw(&polar.basis.a[g_.dims()]);
  if (i < 0 || j < 0) throw std::logic_error("classify_plane: bad polar basis");
  switch (classify_line(i, j)) {
    case LineClass::generator:
      return PlaneSection::line;
    case LineClass::tangent:
      return PlaneSection::pencil;
    case LineClass::secant:
      return PlaneSection::curve;
  }
  throw std::logic_error("classify_plane: unreachable");
}

PlaneSection HermitianGeometry::classify_plane_by_count(
    const Subspace& plane) const {
  if (plane.rank() != 3)
    throw std::invalid_argument("classify_plane_by_count: not a plane");
  const FieldTable& F = g_.field();
  const int d = g_.dims();
  const long long q = g_.q();
  long long count = 0;
  // Walk the plane's points as projective combinations of the basis rows.
  const int order = F.order();
  Fel v[8], pc[8];
  std::vector<Fel> coef(3, F.zero());
  for (int f = 2; f >= 0; --f) {
    std::fill(coef.begin(), coef.end(), F.zero());
    coef[f] = F.one();
    while (true) {
      for (int c = 0; c < d; ++c) {
        Fel sum = F.zero();
        for (int i = f; i < 3; ++i)
          sum = F.add(sum, F.mul(coef[i], plane.basis.at(i, c)));
        v[c] = sum;
      }
      for (int c = 0; c < d; ++c) pc[c] = F.conj(v[c]);
      Fel h = F.zero();
      for (int r = 0; r < d; ++r) {
        Fel row = F.zero();
        for (int c = 0; c < d; ++c)
          row = F.add(row, F.mul(gram_.at(r, c), pc[c]));
        h = F.add(h, F.mul(v[r], row));
      }
      if (h == F.zero()) ++count;
      int pos = 2;
      while (pos > f && coef[pos] == static_cast<Fel>(order - 1)) {
        coef[pos] = 0;
        --pos;
      }
      if (pos == f) break;
      ++coef[pos];
    }
  }
  if (count == q * q + 1) return PlaneSection::line;
  if (count == q * q * q + q * q + 1) return PlaneSection::pencil;
  if (count == q * q * q + 1) return PlaneSection::curve;
  throw std::logic_error("classify_plane_by_count: unexpected section size " +
                         std::to_string(count));
}

std::vector<int> HermitianGeometry::tangent_lines_at(int h_point) const {
  if (!is_absolute(h_point))
    throw std::invalid_argument("tangent_lines_at: point not on the variety");
  std::vector<int> reps;
  Bitset seen(g_.num_points());
  seen.set(h_point);
  for (int r : g_.subspace_points(polar_point(h_point))) {
    if (seen.test(r)) continue;
    LineClass cls = classify_line(h_point, r);
    if (cls == LineClass::tangent) reps.push_back(r);
    for (int p : g_.line_points(h_point, r)) seen.set(p);
  }
  return reps;
}

const char* to_string(LineClass c) {
  switch (c) {
    case LineClass::tangent:
      return "tangent";
    case LineClass::secant:
      return "secant";
    case LineClass::generator:
      return "generator";
  }
  return "?";
}

const char* to_string(PlaneSection s) {
  switch (s) {
    case PlaneSection::line:
      return "line";
    case PlaneSection::pencil:
      return "pencil";
    case PlaneSection::curve:
      return "curve";
  }
  return "?";
}

long long hermitian_size(int n, long long q) {
  long long qn1 = 1, qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  qn1 = qn * q;
  long long sn = (n % 2 == 0) ? 1 : -1;
  return (qn1 + sn) * (qn - sn) / (q * q - 1);
}

Mat scrambled_gram(const ProjGeometry& g, const Mat& gram, std::uint64_t seed) {
  const FieldTable& F = g.field();
  const int d = g.dims();
  std::mt19937_64 rng(seed);
  Mat S(d, d);
  do {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        S.at(i, j) = static_cast<Fel>(rng() % F.order());
  } while (mat_det(S, F) == F.zero());
  Mat Sq = mat_frobenius(S, F, g.q());
  return mat_mul(mat_mul(mat_transpose(S), gram, F), Sq, F);
}

}  // namespace hermsrg
