#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hermsrg/graph.hpp"
#include "hermsrg/plane.hpp"
#include "hermsrg/projgeom.hpp"

namespace hermsrg {

// Closed-form parameters of the tangency graph on the points of
// PG(n, q^2) \ H(n, q^2), n >= 2.  With e = (-1)^(n+1):
//   v = q^n(q^(n+1) - e)/(q+1),        k = (q^n + e)(q^(n-1) - e),
//   lambda = q^(2n-3)(q+1) - e q^(n-1)(q-1) - 2,
//   mu = q^(n-2)(q+1)(q^(n-1) - e).
SrgParams nu_parameters(int n, long long q);

// A graph whose vertices are labelled by interned projective point indices.
struct PointGraph {
  Graph graph;
  std::vector<int> vertex_point;  // vertex -> point index
  std::vector<int> point_vertex;  // point index -> vertex, or -1
};

// The graph on the off-variety points, joined when their span is a tangent
// line.  Vertices appear in ascending point-index order.
PointGraph build_nu(const HermitianGeometry& h, int threads = 0);
PointGraph build_nu(int n, int q, int threads = 0);  // identity-Gram variety

// ---------------------------------------------------------------------------
// Unitals of PG(2, q^2): point sets of size q^3 + 1 met by every line in
// 1 or q + 1 points.

enum class UnitalKind { classical, buekenhout_metz, buekenhout_tits };

struct Unital {
  int q = 0;  // subline order; the ambient plane is PG(2, q^2)
  UnitalKind kind = UnitalKind::classical;
  bool alt_model = false;  // Buekenhout-Metz in the alternate coordinates
  int dual_depth = 0;      // how many times dual_unital was applied
  Fel alpha = 0, beta = 0; // Buekenhout-Metz / Buekenhout-Tits parameters
  std::vector<int> points; // sorted point indices, size q^3 + 1

  const PlaneGeometry& plane() const { return PlaneGeometry::get(q); }
  std::string describe() const;
};

// The absolute points of the identity-Gram H(2, q^2).
Unital build_unital_classical(int q);

// Validity of the orthogonal Buekenhout-Metz parameter pair over GF(q^2):
// odd q:  (beta - beta^q)^2 + 4 alpha^(q+1) is a non-square of GF(q);
// even q > 2:  beta not in GF(q) and alpha^(q+1)/(beta + beta^q)^2 has
// absolute trace 0.  On failure `why` names the violated condition.
bool bm_params_valid(int q, Fel alpha, Fel beta, std::string* why = nullptr);
std::vector<std::pair<Fel, Fel>> bm_valid_pairs(int q);  // ascending

// { (x, alpha x^2 + beta x^(q+1) + z, 1) : x in GF(q^2), z in GF(q) }
// together with (0, 1, 0); classical exactly when alpha = 0.
Unital build_unital_bm(int q, Fel alpha, Fel beta);

// The projectively equivalent model
// { (-2 alpha x + (beta^q - beta) x^q, 1, alpha x^2 - beta^q x^(q+1) - z) }
// together with (0, 0, 1), in which the explicit four-point witness family
// for the dual configuration search is stated (odd q).
Unital build_unital_bm_alt(int q, Fel alpha, Fel beta);

// Buekenhout-Tits: q = 2^m with odd m > 1, delta = 2^((m+1)/2),
// { (x0 + x1 b, (x0^(delta+2) + x0 x1 + x1^delta) b + z, 1) : x0,x1,z in
// GF(q) } together with (0, 1, 0), where b is the smallest-index element of
// GF(q^2) \ GF(q).
Unital build_unital_bt(int q);

struct UnitalCheck {
  bool ok = false;
  long long tangent_lines = 0;  // must be q^3 + 1
  long long secant_lines = 0;   // must be q^4 - q^3 + q^2
  int violating_line = -1;      // witness when !ok
  long long violating_count = -1;
};
// Checks every line of the plane meets the set in 1 or q+1 points.
UnitalCheck validate_unital(const Unital& u);

// The dual unital under the correlation (a, b, c) <-> [a, b, c]: the tangent
// lines of U, reinterpreted as points.  Applying it twice returns the
// original point set.
Unital dual_unital(const Unital& u);

// The graph on the plane points off U, joined when their line is tangent.
PointGraph build_gamma_u(const Unital& u, int threads = 0);

// Four points off U, no three collinear, all six joining lines tangent.
struct OnanConfig {
  std::array<int, 4> points{};
  std::array<int, 6> lines{};  // sorted line ids
  std::string route;           // "seeded-family" or "exhaustive"
};

// Deterministic first-found search.  For a nonclassical Buekenhout-Metz
// unital in the alternate model with odd q, the explicit six-line family is
// tried first; otherwise (and as a fallback) a pruned exhaustive scan over
// 4-subsets of external points runs in ascending order.
std::optional<OnanConfig> find_dual_onan(const Unital& u);

// Checks a claimed configuration against the unital (self-validating
// certificate used by reports).
bool check_onan_config(const Unital& u, const OnanConfig& c, std::string* why = nullptr);

// Text interchange: header lines (schema, q, kind, parameters) followed by
// the sorted point indices, one per line.  See docs/formats.md.
std::string unital_to_text(const Unital& u);
Unital unital_from_text(const std::string& text);

}  // namespace hermsrg
