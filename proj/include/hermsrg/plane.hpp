#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "hermsrg/projgeom.hpp"

namespace hermsrg {

// Incidence structure of PG(2, q^2) with fast point-pair -> line lookup.
// Lines are self-dually identified with points: the line [a, b, c] (the zero
// set of ax + by + cz) carries the index of the point (a, b, c).  All line
// ids used below are such dual point indices.
class PlaneGeometry {
 public:
  static const PlaneGeometry& get(int q);  // interned, immutable

  const ProjGeometry& geom() const { return g_; }
  int q() const { return g_.q(); }
  int num_points() const { return g_.num_points(); }
  int num_lines() const { return g_.num_points(); }

  int line_through(int p, int r) const;  // p != r
  bool incident(int point, int line) const;
  const std::vector<int>& points_of_line(int line) const {
    return line_points_[line];
  }
  const std::vector<int>& lines_through_point(int p) const {
    return point_lines_[p];
  }
  const Bitset& line_mask(int line) const { return line_masks_[line]; }

  // All q(q^2+1) Baer sublines contained in a line, each a sorted (q+1)-set,
  // enumerated by brute triple closure - computed fresh per call.
  std::vector<std::vector<int>> baer_sublines_of_line(int line) const;

  // Dual Baer sublines through a point: (q+1)-sets of concurrent lines,
  // obtained by applying the subline construction to the dual point indices.
  std::vector<std::vector<int>> dual_baer_sublines_at(int point) const;

 private:
  explicit PlaneGeometry(int q);
  const ProjGeometry& g_;
  std::vector<std::vector<int>> line_points_;
  std::vector<std::vector<int>> point_lines_;
  std::vector<Bitset> line_masks_;
};

// A Hermitian pencil in PG(2, q^2): a point V together with q+1 lines through
// V forming a dual Baer subline.  Its point set (size q^3 + q^2 + 1) is a
// degenerate Hermitian curve; these are exactly the pencil-type plane
// sections of larger Hermitian varieties.
struct Pencil {
  int vertex = -1;
  std::vector<int> lines;   // q+1 line ids, sorted
  std::vector<int> points;  // union of the lines' points, sorted
};

// All q(q^2+1) pencils with the given vertex, in a deterministic order.
std::vector<Pencil> pencils_at(const PlaneGeometry& pg, int vertex);

// Chart of a plane subspace inside a larger geometry: identifies the plane's
// points with the points of the standalone PG(2, q^2) by basis coordinates.
struct PlaneChart {
  const ProjGeometry* ambient = nullptr;
  const PlaneGeometry* local = nullptr;
  std::vector<int> to_ambient;  // local point index -> ambient point index
  std::unordered_map<int, int> to_local;

  static PlaneChart build(const ProjGeometry& ambient, const Subspace& plane);
  int local_of(int ambient_point) const {
    auto it = to_local.find(ambient_point);
    return it == to_local.end() ? -1 : it->second;
  }
};

// Decides whether `points` is the point set of a nondegenerate Hermitian
// curve of PG(2, q^2), by solving for a Hermitian Gram vanishing on all of
// them (a 9-dimensional GF(q)-linear system).  Returns the Gram if so.
std::optional<Mat> recognize_hermitian_curve(const PlaneGeometry& pg,
                                             const std::vector<int>& points);

}  // namespace hermsrg
