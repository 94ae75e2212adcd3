#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hermsrg {

// Field element index: 0 is the zero element, 1 + k is g^k for the fixed
// primitive element g.  All arithmetic is table lookups.
using Fel = std::uint16_t;

// Exact arithmetic for GF(p^m), p^m <= 81.  Instances are immutable and
// interned: FieldTable::get(p, m) always returns the same object, so tables
// can be shared freely across threads.
//
// The reduction modulus for each (p, m) is the lexicographically smallest
// monic primitive polynomial of degree m over GF(p) (candidates ordered by
// the packed base-p value of their non-leading coefficients).  The table is
// fixed in data/primitive_polynomials.txt and embedded here, which pins the
// element indexing across runs and platforms.
class FieldTable {
 public:
  static const FieldTable& get(int p, int m);
  static constexpr int kMaxOrder = 81;

  int p() const { return p_; }
  int m() const { return m_; }
  int order() const { return n_; }
  // Monic modulus, coefficients by ascending degree (size m+1).
  const std::vector<int>& modulus() const { return modulus_; }

  Fel zero() const { return 0; }
  Fel one() const { return 1; }
  Fel gen() const { return n_ > 2 ? Fel(2) : Fel(1); }  // primitive element g

  Fel add(Fel a, Fel b) const { return add_[a * n_ + b]; }
  Fel sub(Fel a, Fel b) const { return add_[a * n_ + neg_[b]]; }
  Fel neg(Fel a) const { return neg_[a]; }
  Fel mul(Fel a, Fel b) const { return mul_[a * n_ + b]; }
  Fel inv(Fel a) const {
    if (a == 0) throw std::domain_error("GF: inverse of zero");
    return inv_[a];
  }
  Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }

  Fel pow(Fel a, long long e) const;

  // Embedding of the prime subfield: k mod p as a field element.
  Fel from_int(long long k) const {
    long long r = k % p_;
    if (r < 0) r += p_;
    return prime_embed_[r];
  }

  // x -> x^q where q must satisfy q*q == order().
  Fel frobenius(Fel x, int q) const {
    require_conjugation(q);
    return frob_[x];
  }
  Fel conj(Fel x) const {  // shorthand for the q^2 -> q conjugation
    if (!has_subfield_pair())
      throw std::domain_error("GF: no index-2 subfield");
    return frob_[x];
  }

  // Index-2 subfield structure GF(q) inside GF(q^2) (only when m is even):
  // realized as the fixed set of x -> x^q, with an explicit index embedding
  // from the standalone GF(q) table.
  bool has_subfield_pair() const { return m_ % 2 == 0; }
  int subfield_order() const { return sub_q_; }
  const FieldTable& subfield() const;
  bool in_subfield(Fel x) const { return in_sub_[x]; }
  Fel embed_subfield(Fel a) const { return embed_[a]; }    // GF(q) -> GF(q^2)
  Fel project_subfield(Fel x) const {                      // GF(q^2) -> GF(q)
    if (!in_sub_[x]) throw std::domain_error("GF: element not in subfield");
    return project_[x];
  }

  // Relative norm and trace onto GF(q); results are GF(q) elements.
  Fel norm(Fel x) const { return project_subfield(mul(x, frob_[x])); }
  Fel trace(Fel x) const { return project_subfield(add(x, frob_[x])); }

  std::string to_string(Fel x) const;  // e.g. "0", "1", "g^5"

 private:
  FieldTable(int p, int m);
  void link_subfield(const FieldTable& sub);
  void require_conjugation(int q) const {
    if (!has_subfield_pair() || q != sub_q_)
      throw std::domain_error("GF: q^2 != field order in frobenius()");
  }

  int p_, m_, n_;
  int sub_q_ = 0;
  std::vector<int> modulus_;
  std::vector<Fel> add_, mul_, neg_, inv_, frob_, prime_embed_;
  std::vector<Fel> exp_, log_;  // exp_[k] = index of g^k; log_[x] for x != 0
  std::vector<char> in_sub_;
  std::vector<Fel> embed_, project_;

 public:
  // Discrete-log tables, exposed for verification.
  const std::vector<Fel>& exp_table() const { return exp_; }
  const std::vector<Fel>& log_table() const { return log_; }
};

// Squareness of y inside the given field (for odd characteristic decided by
// y^((n-1)/2); in characteristic 2 every element is a square).
bool is_square(const FieldTable& f, Fel y);

// Trace into the prime field GF(p), returned as an integer 0..p-1.
int absolute_trace(const FieldTable& f, Fel y);

// Convenience wrapper carrying its field; used at API boundaries where
// raw indices would be ambiguous.
struct FieldElement {
  Fel value = 0;
  const FieldTable* field = nullptr;

  FieldElement() = default;
  FieldElement(Fel v, const FieldTable& f) : value(v), field(&f) {}

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.check(b); return {a.field->add(a.value, b.value), *a.field};
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.check(b); return {a.field->sub(a.value, b.value), *a.field};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.check(b); return {a.field->mul(a.value, b.value), *a.field};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    a.check(b); return {a.field->div(a.value, b.value), *a.field};
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field == b.field && a.value == b.value;
  }

 private:
  void check(const FieldElement& o) const {
    if (field == nullptr || field != o.field)
      throw std::domain_error("FieldElement: mixed or missing fields");
  }
};

}  // namespace hermsrg
