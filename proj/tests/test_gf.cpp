#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "hermsrg/gf.hpp"

using namespace hermsrg;

namespace {

// Independent reference implementation: naive polynomial arithmetic used to
// re-derive the modulus table.  Kept deliberately separate from the library.
struct RefPoly {
  static std::vector<int> mul_mod(const std::vector<int>& a,
                                  const std::vector<int>& b,
                                  const std::vector<int>& f, int p, int m) {
    std::vector<int> prod(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int d = 2 * m - 2; d >= m; --d) {
      int c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (int i = 0; i < m; ++i)
        prod[d - m + i] = ((prod[d - m + i] - c * f[i]) % p + p) % p;
    }
    return {prod.begin(), prod.begin() + m};
  }

  // True iff x has multiplicative order p^m - 1 modulo the monic polynomial
  // with non-leading coefficients f.
  static bool primitive(const std::vector<int>& f, int p, int m) {
    if (f[0] == 0) return false;
    long long N = 1;
    for (int i = 0; i < m; ++i) N *= p;
    std::vector<int> x(m, 0);
    if (m == 1)
      x[0] = ((-f[0]) % p + p) % p;
    else
      x[1] = 1;
    std::vector<int> one(m, 0);
    one[0] = 1;
    std::vector<int> cur = one;
    std::set<std::vector<int>> seen{one};
    for (long long k = 1; k < N; ++k) {
      cur = mul_mod(cur, x, f, p, m);
      if (std::all_of(cur.begin(), cur.end(), [](int c) { return c == 0; }))
        return false;
      if (cur == one) return k == N - 1;
      if (!seen.insert(cur).second) return false;
    }
    return false;
  }

  // Lexicographically smallest monic primitive polynomial of degree m over
  // GF(p); candidate order is the packed base-p value of (c_{m-1},...,c_0).
  static std::vector<int> smallest_primitive(int p, int m) {
    long long total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
      std::vector<int> f(m);
      long long c = code;
      for (int i = 0; i < m; ++i) { f[i] = c % p; c /= p; }
      if (primitive(f, p, m)) {
        f.push_back(1);
        return f;
      }
    }
    return {};
  }
};

void check_axioms_exhaustive(const FieldTable& F) {
  int n = F.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      for (int c = 0; c < n; ++c) {
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  for (int a = 0; a < n; ++a) {
    CHECK(F.add(a, F.zero()) == a);
    CHECK(F.mul(a, F.one()) == a);
    CHECK(F.add(a, F.neg(a)) == F.zero());
    if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
}

void check_axioms_sampled(const FieldTable& F, int samples) {
  std::mt19937_64 rng(12345);
  int n = F.order();
  for (int s = 0; s < samples; ++s) {
    Fel a = rng() % n, b = rng() % n, c = rng() % n;
    CHECK(F.add(a, b) == F.add(b, a));
    CHECK(F.mul(a, b) == F.mul(b, a));
    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
}

}  // namespace

TEST_CASE("field axioms hold (exhaustive up to order 16, sampled above)") {
  const int specs[][2] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2},
                          {5, 1}, {7, 1}, {11, 1}, {13, 1}};
  for (auto [p, m] : specs) check_axioms_exhaustive(FieldTable::get(p, m));
  const int big[][2] = {{5, 2}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {7, 2}};
  for (auto [p, m] : big) check_axioms_sampled(FieldTable::get(p, m), 10000);
}

TEST_CASE("modulus table matches an independent exhaustive search") {
  std::ifstream in(HERMSRG_DATA_DIR "/primitive_polynomials.txt");
  REQUIRE(in.good());
  std::string line;
  int entries = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int p, m;
    ss >> p >> m;
    std::vector<int> coeffs;
    int c;
    while (ss >> c) coeffs.push_back(c);
    REQUIRE(static_cast<int>(coeffs.size()) == m + 1);

    // the checked-in file, the embedded table and the fresh search agree
    const FieldTable& F = FieldTable::get(p, m);
    CHECK(F.modulus() == coeffs);
    CHECK(RefPoly::smallest_primitive(p, m) == coeffs);
    ++entries;
  }
  CHECK(entries == 32);
}

TEST_CASE("exp/log tables invert each other and g generates") {
  for (auto [p, m] : {std::pair{2, 2}, {3, 2}, {2, 4}, {5, 2}, {2, 6}, {3, 4}}) {
    const FieldTable& F = FieldTable::get(p, m);
    int n = F.order();
    REQUIRE(static_cast<int>(F.exp_table().size()) == n - 1);
    std::set<Fel> seen;
    for (int k = 0; k < n - 1; ++k) {
      Fel x = F.exp_table()[k];
      CHECK(x != 0);
      CHECK(F.log_table()[x] == k);
      seen.insert(x);
    }
    CHECK(static_cast<int>(seen.size()) == n - 1);  // g has full order
    CHECK(F.pow(F.gen(), n - 1) == F.one());
  }
}

TEST_CASE("small-field spot checks") {
  const FieldTable& F4 = FieldTable::get(2, 2);
  // multiplicative group of GF(4) is cyclic of order 3
  Fel g = F4.gen();
  CHECK(F4.mul(g, g) != F4.one());
  CHECK(F4.mul(F4.mul(g, g), g) == F4.one());
  // char 2: x + x = 0
  for (int a = 0; a < 4; ++a) CHECK(F4.add(a, a) == F4.zero());

  const FieldTable& F3 = FieldTable::get(3, 1);
  CHECK(is_square(F3, F3.from_int(1)));
  CHECK_FALSE(is_square(F3, F3.from_int(2)));  // 2 is not a QR mod 3

  const FieldTable& F9 = FieldTable::get(3, 2);
  CHECK(is_square(F9, F9.from_int(2)));  // -1 is a square in GF(9)
  int squares = 0;
  for (int a = 1; a < 9; ++a) squares += is_square(F9, a);
  CHECK(squares == 4);
}

TEST_CASE("frobenius x -> x^q is a field automorphism fixing exactly GF(q)") {
  for (auto [p, m] : {std::pair{2, 2}, {3, 2}, {2, 4}, {5, 2}, {7, 2}, {2, 6}, {3, 4}}) {
    const FieldTable& F = FieldTable::get(p, m);
    int q = F.subfield_order();
    REQUIRE(q * q == F.order());
    int fixed = 0;
    for (int a = 0; a < F.order(); ++a) {
      for (int b = 0; b < F.order(); ++b) {
        CHECK(F.frobenius(F.add(a, b), q) ==
              F.add(F.frobenius(a, q), F.frobenius(b, q)));
        CHECK(F.frobenius(F.mul(a, b), q) ==
              F.mul(F.frobenius(a, q), F.frobenius(b, q)));
      }
      CHECK(F.frobenius(F.frobenius(a, q), q) == a);  // involution
      if (F.frobenius(a, q) == a) {
        ++fixed;
        CHECK(F.in_subfield(a));
      }
    }
    CHECK(fixed == q);
  }
  CHECK_THROWS_AS(FieldTable::get(2, 3).frobenius(1, 2), std::domain_error);
  CHECK_THROWS_AS(FieldTable::get(2, 4).frobenius(1, 2), std::domain_error);
}

TEST_CASE("subfield embedding is a ring isomorphism onto the fixed field") {
  for (auto [p, m] : {std::pair{2, 2}, {3, 2}, {2, 4}, {5, 2}, {2, 6}}) {
    const FieldTable& F = FieldTable::get(p, m);
    const FieldTable& S = F.subfield();
    CHECK(S.order() == F.subfield_order());
    for (int a = 0; a < S.order(); ++a)
      for (int b = 0; b < S.order(); ++b) {
        CHECK(F.embed_subfield(S.add(a, b)) ==
              F.add(F.embed_subfield(a), F.embed_subfield(b)));
        CHECK(F.embed_subfield(S.mul(a, b)) ==
              F.mul(F.embed_subfield(a), F.embed_subfield(b)));
      }
    for (int a = 0; a < S.order(); ++a)
      CHECK(F.project_subfield(F.embed_subfield(a)) == a);
    // projecting anything outside the fixed field is an error
    for (int x = 0; x < F.order(); ++x)
      if (!F.in_subfield(x)) {
        CHECK_THROWS_AS(F.project_subfield(x), std::domain_error);
        break;
      }
  }
}

TEST_CASE("norm is multiplicative and surjective; trace is additive and surjective") {
  for (auto [p, m] : {std::pair{2, 2}, {3, 2}, {2, 4}, {5, 2}, {2, 6}, {3, 4}}) {
    const FieldTable& F = FieldTable::get(p, m);
    const FieldTable& S = F.subfield();
    std::set<Fel> norm_img, trace_img;
    for (int x = 0; x < F.order(); ++x) {
      norm_img.insert(F.norm(x));
      trace_img.insert(F.trace(x));
      for (int y = 0; y < F.order(); ++y) {
        CHECK(F.norm(F.mul(x, y)) == S.mul(F.norm(x), F.norm(y)));
        CHECK(F.trace(F.add(x, y)) == S.add(F.trace(x), F.trace(y)));
      }
    }
    CHECK(static_cast<int>(norm_img.size()) == S.order());
    CHECK(static_cast<int>(trace_img.size()) == S.order());
    // norm of nonzero is nonzero; x^(q+1) lands in the fixed field
    for (int x = 1; x < F.order(); ++x) {
      CHECK(F.norm(x) != 0);
      CHECK(F.in_subfield(F.pow(x, F.subfield_order() + 1)));
    }
  }
}

TEST_CASE("absolute trace maps onto the prime field with balanced fibres") {
  const FieldTable& F16 = FieldTable::get(2, 4);
  int zeros = 0;
  for (int a = 0; a < 16; ++a) {
    int t = absolute_trace(F16, a);
    CHECK((t == 0 || t == 1));
    zeros += (t == 0);
  }
  CHECK(zeros == 8);

  const FieldTable& F64 = FieldTable::get(2, 6);
  zeros = 0;
  for (int a = 0; a < 64; ++a) zeros += (absolute_trace(F64, a) == 0);
  CHECK(zeros == 32);

  // additivity
  std::mt19937_64 rng(7);
  for (int s = 0; s < 2000; ++s) {
    Fel a = rng() % 64, b = rng() % 64;
    CHECK(absolute_trace(F64, F64.add(a, b)) ==
          (absolute_trace(F64, a) + absolute_trace(F64, b)) % 2);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(FieldTable::get(4, 1), std::invalid_argument);   // not prime
  CHECK_THROWS_AS(FieldTable::get(6, 2), std::invalid_argument);   // not prime
  CHECK_THROWS_AS(FieldTable::get(2, 7), std::invalid_argument);   // over cap
  CHECK_THROWS_AS(FieldTable::get(3, 5), std::invalid_argument);   // over cap
  CHECK_THROWS_AS(FieldTable::get(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(FieldTable::get(83, 1), std::invalid_argument);  // over cap
  CHECK_THROWS_AS(FieldTable::get(2, 3).subfield(), std::domain_error);
}

TEST_CASE("FieldElement wrapper arithmetic and field mixing guard") {
  const FieldTable& F9 = FieldTable::get(3, 2);
  const FieldTable& F4 = FieldTable::get(2, 2);
  FieldElement a(F9.gen(), F9), b(F9.from_int(2), F9);
  CHECK((a + b) - b == a);
  CHECK((a * b) / b == a);
  FieldElement c(F4.one(), F4);
  CHECK_THROWS_AS(a + c, std::domain_error);
}

TEST_CASE("pow handles negative and large exponents") {
  const FieldTable& F = FieldTable::get(3, 2);
  Fel g = F.gen();
  CHECK(F.pow(g, 8) == F.one());
  CHECK(F.pow(g, -1) == F.inv(g));
  CHECK(F.pow(g, 17) == F.pow(g, 17 % 8));
  CHECK(F.pow(F.zero(), 3) == F.zero());
  CHECK_THROWS_AS(F.pow(F.zero(), 0), std::domain_error);
}
