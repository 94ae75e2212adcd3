#include "hermsrg/gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hermsrg {

namespace {

struct PolyEntry {
  int p, m;
  int coeffs[7];  // c0..cm, monic
};

// Matches data/primitive_polynomials.txt line for line.
constexpr PolyEntry kPolyTable[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 1, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {5, 1, {2, 1}},
    {5, 2, {2, 1, 1}},
    {7, 1, {2, 1}},
    {7, 2, {3, 1, 1}},
    {11, 1, {3, 1}},
    {13, 1, {2, 1}},
    {17, 1, {3, 1}},
    {19, 1, {4, 1}},
    {23, 1, {2, 1}},
    {29, 1, {2, 1}},
    {31, 1, {7, 1}},
    {37, 1, {2, 1}},
    {41, 1, {6, 1}},
    {43, 1, {9, 1}},
    {47, 1, {2, 1}},
    {53, 1, {2, 1}},
    {59, 1, {3, 1}},
    {61, 1, {2, 1}},
    {67, 1, {4, 1}},
    {71, 1, {2, 1}},
    {73, 1, {5, 1}},
    {79, 1, {2, 1}},
};

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

const PolyEntry* find_poly(int p, int m) {
  for (const auto& e : kPolyTable)
    if (e.p == p && e.m == m) return &e;
  return nullptr;
}

// Polynomial coefficient vectors (ascending degree), arithmetic mod p and a
// monic modulus.  Only used while constructing the lookup tables.
using Poly = std::vector<int>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, int p, int m) {
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
  return Poly(prod.begin(), prod.begin() + m);
}

long long poly_pack(const Poly& a, int p) {
  long long code = 0;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) code = code * p + a[i];
  return code;
}

}  // namespace

FieldTable::FieldTable(int p, int m) : p_(p), m_(m) {
  if (!is_prime(p)) throw std::invalid_argument("GF: p is not prime");
  if (m < 1) throw std::invalid_argument("GF: m must be positive");
  long long n = 1;
  for (int i = 0; i < m; ++i) {
    n *= p;
    if (n > kMaxOrder) throw std::invalid_argument("GF: p^m exceeds supported cap");
  }
  n_ = static_cast<int>(n);

  const PolyEntry* entry = find_poly(p, m);
  if (!entry) throw std::invalid_argument("GF: no modulus table entry for (p, m)");
  modulus_.assign(entry->coeffs, entry->coeffs + m + 1);

  Poly f(modulus_.begin(), modulus_.begin() + m);  // non-leading part

  // Power table of the primitive element x.  If all n-1 powers are distinct
  // and return to 1, the modulus is both irreducible and primitive.
  Poly x(m, 0);
  if (m == 1)
    x[0] = ((-f[0]) % p + p) % p;
  else
    x[1] = 1;
  std::vector<Poly> pow_polys;  // pow_polys[k] = x^k
  Poly one(m, 0);
  one[0] = 1;
  pow_polys.push_back(one);
  std::map<long long, int> seen{{poly_pack(one, p), 0}};
  Poly cur = one;
  for (int k = 1; k < n_ - 1; ++k) {
    cur = poly_mul_mod(cur, x, f, p, m);
    if (!seen.emplace(poly_pack(cur, p), k).second)
      throw std::logic_error("GF: modulus table entry is not primitive");
    pow_polys.push_back(cur);
  }
  cur = poly_mul_mod(cur, x, f, p, m);
  if (poly_pack(cur, p) != 1)
    throw std::logic_error("GF: modulus table entry is not primitive");

  // Element index <-> packed polynomial.
  std::vector<long long> packed(n_, 0);
  std::vector<Fel> index_of(n_, 0);  // by packed value
  exp_.assign(n_ - 1, 0);
  log_.assign(n_, 0);
  for (int k = 0; k < n_ - 1; ++k) {
    long long code = poly_pack(pow_polys[k], p);
    Fel idx = static_cast<Fel>(1 + k);
    packed[idx] = code;
    index_of[code] = idx;
    exp_[k] = idx;
    log_[idx] = static_cast<Fel>(k);
  }

  auto unpack = [&](long long code) {
    Poly a(m, 0);
    for (int i = 0; i < m; ++i) { a[i] = code % p; code /= p; }
    return a;
  };

  add_.assign(n_ * n_, 0);
  mul_.assign(n_ * n_, 0);
  neg_.assign(n_, 0);
  inv_.assign(n_, 0);
  for (int a = 0; a < n_; ++a) {
    Poly pa = unpack(packed[a]);
    for (int b = 0; b < n_; ++b) {
      Poly pb = unpack(packed[b]);
      Poly s(m);
      for (int i = 0; i < m; ++i) s[i] = (pa[i] + pb[i]) % p;
      add_[a * n_ + b] = index_of[poly_pack(s, p)];
    }
  }
  for (int a = 0; a < n_; ++a) {
    Poly pa = unpack(packed[a]);
    Poly na(m);
    for (int i = 0; i < m; ++i) na[i] = (p - pa[i]) % p;
    neg_[a] = index_of[poly_pack(na, p)];
  }
  for (int a = 1; a < n_; ++a) {
    for (int b = 1; b < n_; ++b) {
      int k = (log_[a] + log_[b]) % (n_ - 1);
      mul_[a * n_ + b] = exp_[k];
    }
    inv_[a] = exp_[(n_ - 1 - log_[a]) % (n_ - 1)];
  }

  prime_embed_.assign(p, 0);
  for (int k = 1; k < p; ++k) prime_embed_[k] = add(prime_embed_[k - 1], 1);

  // Index-2 subfield data.
  frob_.assign(n_, 0);
  in_sub_.assign(n_, 0);
  if (m_ % 2 == 0) {
    sub_q_ = 1;
    for (int i = 0; i < m_ / 2; ++i) sub_q_ *= p;
    for (int a = 0; a < n_; ++a) frob_[a] = pow(static_cast<Fel>(a), sub_q_);
    for (int a = 0; a < n_; ++a) in_sub_[a] = (frob_[a] == a);
  }
}

Fel FieldTable::pow(Fel a, long long e) const {
  if (a == 0) {
    if (e <= 0) throw std::domain_error("GF: 0^e with e <= 0");
    return 0;
  }
  long long k = log_[a];
  long long r = (k * (e % (n_ - 1))) % (n_ - 1);
  if (r < 0) r += n_ - 1;
  return exp_[r];
}

std::string FieldTable::to_string(Fel x) const {
  if (x == 0) return "0";
  if (x == 1) return "1";
  return "g^" + std::to_string(log_[x]);
}

void FieldTable::link_subfield(const FieldTable& sub) {
  // Find the smallest-index root of GF(q)'s modulus inside GF(q^2);
  // g_q -> root extends to a field embedding onto the fixed set of frob_.
  Fel root = 0;
  bool found = false;
  for (int cand = 0; cand < n_ && !found; ++cand) {
    Fel acc = 0, xp = 1;
    for (int i = 0; i <= sub.m(); ++i) {
      acc = add(acc, mul(from_int(sub.modulus()[i]), xp));
      xp = mul(xp, static_cast<Fel>(cand));
    }
    if (acc == 0) { root = static_cast<Fel>(cand); found = true; }
  }
  if (!found) throw std::logic_error("GF: subfield modulus has no root");
  embed_.assign(sub.order(), 0);
  project_.assign(n_, 0);
  for (int k = 0; k < sub.order() - 1; ++k)
    embed_[sub.exp_table()[k]] = pow(root, k);
  std::vector<char> hit(n_, 0);
  for (int a = 0; a < sub.order(); ++a) {
    Fel img = embed_[a];
    if (!in_sub_[img] || hit[img])
      throw std::logic_error("GF: embedding is not injective into the fixed field");
    hit[img] = 1;
    project_[img] = static_cast<Fel>(a);
  }
  for (int x = 0; x < n_; ++x)
    if (in_sub_[x] && !hit[x])
      throw std::logic_error("GF: embedding is not onto the fixed field");
}

namespace {
std::mutex registry_mutex;
std::map<std::pair<int, int>, std::unique_ptr<FieldTable>>& registry() {
  static std::map<std::pair<int, int>, std::unique_ptr<FieldTable>> r;
  return r;
}
}  // namespace

const FieldTable& FieldTable::get(int p, int m) {
  {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry().find({p, m});
    if (it != registry().end()) return *it->second;
  }
  // Construct outside the lock; building GF(q^2) recurses into GF(q).
  std::unique_ptr<FieldTable> fresh(new FieldTable(p, m));
  if (m % 2 == 0) fresh->link_subfield(FieldTable::get(p, m / 2));
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto [it, inserted] = registry().emplace(std::make_pair(p, m), std::move(fresh));
  (void)inserted;  // on a lost race the duplicate is discarded; tables are identical
  return *it->second;
}

const FieldTable& FieldTable::subfield() const {
  if (!has_subfield_pair()) throw std::domain_error("GF: no index-2 subfield");
  return FieldTable::get(p_, m_ / 2);
}

bool is_square(const FieldTable& f, Fel y) {
  if (y == 0) return true;
  if (f.p() == 2) return true;
  return f.pow(y, (f.order() - 1) / 2) == f.one();
}

int absolute_trace(const FieldTable& f, Fel y) {
  Fel acc = 0, t = y;
  for (int i = 0; i < f.m(); ++i) {
    acc = f.add(acc, t);
    t = f.pow(t, f.p());
  }
  // acc lies in the prime subfield; recover its integer value.
  for (int k = 0; k < f.p(); ++k)
    if (f.from_int(k) == acc) return k;
  throw std::logic_error("GF: absolute trace not in prime field");
}

}  // namespace hermsrg
