#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hermsrg/bitset.hpp"
#include "hermsrg/gf.hpp"

namespace hermsrg {

// Small dense matrix over a FieldTable.  Coordinates live in PG(n, q^2) with
// n <= 5; 10 columns cover the widest linear system solved here (the 9
// real-dimension space of Hermitian 3x3 Grams), and 12 rows leave room for
// stacked systems (e.g. the two annihilators joined when intersecting
// subspaces).
struct Mat {
  static constexpr int kMaxRows = 12;
  static constexpr int kMaxCols = 10;
  int rows = 0, cols = 0;
  std::array<Fel, kMaxRows * kMaxCols> a{};

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c) {}
  Fel& at(int i, int j) { return a[i * cols + j]; }
  Fel at(int i, int j) const { return a[i * cols + j]; }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (int i = 0; i < rows * cols; ++i)
      if (a[i] != o.a[i]) return false;
    return true;
  }
};

// In-place reduced row echelon form; returns the rank.
int rref(Mat& m, const FieldTable& F);
// Basis rows (in RREF) of { x : m x = 0 }.
Mat nullspace(const Mat& m, const FieldTable& F);
Mat mat_mul(const Mat& a, const Mat& b, const FieldTable& F);
Mat mat_transpose(const Mat& a);
Mat mat_frobenius(const Mat& a, const FieldTable& F, int q);  // entrywise x^q
Fel mat_det(const Mat& a, const FieldTable& F);

// A projective subspace of PG(n, q^2), stored as the canonical RREF basis of
// its row space.  dim() is the projective dimension (rank - 1).
struct Subspace {
  Mat basis;  // RREF, basis.rows = rank
  int rank() const { return basis.rows; }
  int dim() const { return basis.rows - 1; }
  bool operator==(const Subspace& o) const { return basis == o.basis; }
};

// PG(n, q^2) with interned points.  Points are enumerated once, in the fixed
// order "leading zeros first, then remaining coordinates lexicographically by
// element index", and referred to everywhere by their index in that order.
class ProjGeometry {
 public:
  static const ProjGeometry& get(int n, int q);  // interned, immutable

  int n() const { return n_; }
  int q() const { return q_; }
  const FieldTable& field() const { return F_; }        // GF(q^2)
  const FieldTable& subfield() const { return F_.subfield(); }
  int num_points() const { return num_points_; }
  int dims() const { return n_ + 1; }

  const Fel* point(int i) const { return &coords_[i * dims_]; }
  std::vector<Fel> point_vec(int i) const {
    return {point(i), point(i) + dims_};
  }
  // Looks up (a copy of) v after projective normalization; -1 if absent.
  int index_of(const std::vector<Fel>& v) const;
  int index_of_raw(const Fel* v) const;

  // The q^2 + 1 points of the line through two distinct points.
  std::vector<int> line_points(int i, int j) const;
  bool collinear(int i, int j, int k) const;

  Subspace span_of_points(const std::vector<int>& pts) const;
  Subspace hyperplane(const std::vector<Fel>& coeffs) const;
  bool subspace_contains(const Subspace& s, int pt) const;
  std::vector<int> subspace_points(const Subspace& s) const;
  Subspace meet(const Subspace& s, const Subspace& t) const;

  // Canonical enumeration of all subspaces of projective dimension d, by
  // RREF normal forms.  The callback may return false to stop early.
  void for_each_subspace(int d, const std::function<bool(const Subspace&)>& fn) const;
  long long count_subspaces(int d) const;  // Gaussian binomial [n+1, d+1]_{q^2}

  // Unique Baer subline through three distinct collinear points: the q + 1
  // points { P_i + t c P_j : t in GF(q) } u { P_j } where P_k = P_i + c P_j.
  // Returned sorted by point index; independent of the argument order.
  std::vector<int> baer_subline(int i, int j, int k) const;

 private:
  ProjGeometry(int n, int q);
  void enumerate_points();

  int n_, q_, dims_;
  const FieldTable& F_;
  int num_points_ = 0;
  std::vector<Fel> coords_;
  std::vector<std::uint64_t> keys_;     // sorted packed keys
  std::vector<std::int32_t> key_index_; // parallel to keys_
  std::uint64_t pack(const Fel* v) const;
};

enum class LineClass { tangent, secant, generator };
enum class PlaneSection { line, pencil, curve };

const char* to_string(LineClass c);
const char* to_string(PlaneSection s);

// A nondegenerate Hermitian variety H(n, q^2) inside a ProjGeometry, given by
// a Hermitian Gram matrix (conjugate-transpose equal, nonsingular).  Several
// varieties may live in the same space; lemma checks run the same counts
// against the standard (identity-Gram) form and a scrambled frame.
class HermitianGeometry {
 public:
  HermitianGeometry(const ProjGeometry& g, const Mat& gram);
  static const HermitianGeometry& standard(int n, int q);  // identity Gram

  const ProjGeometry& geom() const { return g_; }
  const Mat& gram() const { return gram_; }
  int q() const { return g_.q(); }

  const Bitset& absolute() const { return absolute_; }
  const std::vector<int>& points() const { return h_points_; }
  bool is_absolute(int i) const { return absolute_.test(i); }
  long long size() const { return static_cast<long long>(h_points_.size()); }

  // Sesquilinear form h(P_i, P_j); h(P, P) is cached per point.
  Fel form(int i, int j) const;
  Fel form_self(int i) const { return hself_[i]; }

  // O(1) classification through the rank of the restricted 2x2 Gram.
  LineClass classify_line(int i, int j) const;
  // Reference route: walk the q^2 + 1 points and count absolute ones.
  int absolute_points_on_line(int i, int j) const;

  std::vector<Fel> polar_coeffs(int i) const;   // functional of P_i^perp
  Subspace polar_point(int i) const;            // the hyperplane P_i^perp
  Subspace polar_of(const Subspace& s) const;

  // n == 4 only: section type of a plane, decided by its polar line
  // (generator -> line, tangent -> pencil, secant -> curve).
  PlaneSection classify_plane(const Subspace& plane) const;
  // Reference route via |plane  H| in {q^2+1, q^3+q^2+1, q^3+1}.
  PlaneSection classify_plane_by_count(const Subspace& plane) const;

  // Two off-variety points are "tangent-joined" when their line is tangent.
  bool tangent_joined(int i, int j) const {
    return classify_line(i, j) == LineClass::tangent;
  }

  // Tangent lines at an absolute point P, each given by its lowest-index
  // off-variety representative; ascending.
  std::vector<int> tangent_lines_at(int h_point) const;

 private:
  const ProjGeometry& g_;
  Mat gram_;
  std::vector<Fel> gp_;     // per point: G * P^(q), for fast form evaluation
  std::vector<Fel> hself_;  // h(P, P)
  Bitset absolute_;
  std::vector<int> h_points_;
};

// Closed-form |H(n, q^2)| = (q^(n+1) + (-1)^n)(q^n - (-1)^n) / (q^2 - 1).
long long hermitian_size(int n, long long q);

// Hermitian-congruent scramble S^T G S^(q) by a seeded random invertible S;
// yields a projectively equivalent variety in a shifted frame.
Mat scrambled_gram(const ProjGeometry& g, const Mat& gram, std::uint64_t seed);

}  // namespace hermsrg
