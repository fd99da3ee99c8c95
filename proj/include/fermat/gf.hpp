// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_GF_HPP
#define FERMAT_GF_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fermat/errors.hpp"

namespace fermat::gf {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// --- Modular machine arithmetic and factoring ------------------------------

inline u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(u128(a) * b % n); }

inline u64 powmod(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a mod n for gcd(a, n) = 1.
inline u64 invmod(u64 a, u64 n) {
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(n), nr = static_cast<long long>(a % n);
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw DomainError("invmod: arguments not coprime");
  if (t < 0) t += static_cast<long long>(n);
  return static_cast<u64>(t);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {
inline u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}
}  // namespace detail

inline void factor_into(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  for (u64 p = 2; p < 100000 && p * p <= n; p = (p == 2 ? 3 : p + 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
    if (n == 1) return;
    if (is_prime_u64(n)) {
      ++out[n];
      return;
    }
  }
  u64 d = detail::pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

inline std::map<u64, unsigned> factor_u64(u64 n) {
  std::map<u64, unsigned> out;
  factor_into(n, out);
  return out;
}

// --- Finite fields ----------------------------------------------------------

class Field;

// Element of F_{p^k} in the polynomial basis: k coefficients mod p over the
// field's modulus.  Fields are interned, so owner comparison is pointer
// comparison and equality is coefficient-wise.
struct FieldElem {
  const Field* field = nullptr;
  std::vector<u64> c;

  bool is_zero() const {
    for (u64 x : c)
      if (x) return false;
    return true;
  }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field == b.field && a.c == b.c;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  friend bool operator<(const FieldElem& a, const FieldElem& b) {  // for ordered containers
    if (a.field != b.field) return a.field < b.field;
    return a.c < b.c;
  }
};

FieldElem operator+(const FieldElem&, const FieldElem&);
FieldElem operator-(const FieldElem&, const FieldElem&);
FieldElem operator*(const FieldElem&, const FieldElem&);

// F_{p^k} with an explicit monic irreducible modulus over F_p.  Immutable
// after construction; lookup caches (generator, dlog tables) are built
// lazily under std::once_flag, so all operations are safe to call from
// multiple threads.
class Field {
 public:
  u64 p() const { return p_; }
  unsigned k() const { return k_; }
  u64 order() const { return q_; }  // p^k
  const std::vector<u64>& modulus() const { return modulus_; }

  FieldElem zero() const { return {this, std::vector<u64>(k_, 0)}; }
  FieldElem one() const { return scalar(1); }
  FieldElem scalar(u64 v) const {
    FieldElem e = zero();
    e.c[0] = v % p_;
    return e;
  }
  FieldElem from_coeffs(std::vector<u64> c) const {
    if (c.size() > k_) throw DomainError("element has too many coefficients");
    c.resize(k_, 0);
    for (auto& x : c) x %= p_;
    return {this, std::move(c)};
  }
  // The class of t, a root of the modulus (for k = 1 the scalar -modulus[0]).
  FieldElem gen_root() const {
    if (k_ == 1) return scalar(p_ - modulus_[0] % p_);
    FieldElem e = zero();
    e.c[1] = 1;
    return e;
  }

  // Dense element <-> index bijection (index = sum c_i p^i), used for
  // deterministic iteration order and table indexing.
  u64 index_of(const FieldElem& e) const {
    u64 idx = 0;
    for (unsigned i = k_; i-- > 0;) idx = idx * p_ + e.c[i];
    return idx;
  }
  FieldElem elem_of_index(u64 idx) const {
    FieldElem e = zero();
    for (unsigned i = 0; i < k_; ++i) {
      e.c[i] = idx % p_;
      idx /= p_;
    }
    return e;
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    check(a), check(b);
    FieldElem r = a;
    for (unsigned i = 0; i < k_; ++i) {
      r.c[i] += b.c[i];
      if (r.c[i] >= p_) r.c[i] -= p_;
    }
    return r;
  }
  FieldElem sub(const FieldElem& a, const FieldElem& b) const {
    check(a), check(b);
    FieldElem r = a;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = (r.c[i] + p_ - b.c[i]) % p_;
    return r;
  }
  FieldElem neg(const FieldElem& a) const { return sub(zero(), a); }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    check(a), check(b);
    if (k_ == 1) return {this, {mulmod(a.c[0], b.c[0], p_)}};
    std::vector<u64> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
      if (!a.c[i]) continue;
      for (unsigned j = 0; j < k_; ++j) {
        if (!b.c[j]) continue;
        prod[i + j] = (prod[i + j] + mulmod(a.c[i], b.c[j], p_)) % p_;
      }
    }
    reduce(prod);
    prod.resize(k_);
    return {this, std::move(prod)};
  }

  FieldElem pow(const FieldElem& a, u64 e) const {
    FieldElem r = one();
    FieldElem base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(const FieldElem& a) const {
    if (a.is_zero()) throw DomainError("inverse of zero");
    return pow(a, q_ - 2);
  }

  // Smallest generator of the multiplicative group in index order, verified
  // against every prime divisor of q - 1.
  const FieldElem& generator() const {
    std::call_once(gen_once_, [this] {
      for (u64 idx = 1; idx < q_; ++idx) {
        FieldElem e = elem_of_index(idx);
        if (is_generator(e)) {
          gen_ = std::make_unique<FieldElem>(std::move(e));
          return;
        }
      }
      throw std::logic_error("no generator found");  // unreachable for a field
    });
    return *gen_;
  }

  bool is_generator(const FieldElem& e) const {
    if (e.is_zero()) return false;
    for (const auto& [ell, mult] : order_factors()) {
      (void)mult;
      if (pow(e, (q_ - 1) / ell) == one()) return false;
    }
    return true;
  }

  const std::map<u64, unsigned>& order_factors() const {
    std::call_once(fac_once_, [this] { factors_ = factor_u64(q_ - 1); });
    return factors_;
  }

  // Discrete log base the canonical generator.  Table-backed up to 2^20
  // elements, baby-step giant-step beyond.
  u64 dlog(const FieldElem& e) const {
    if (e.is_zero()) throw DomainError("dlog of zero");
    check(e);
    if (q_ <= kDlogTableCap) {
      std::call_once(table_once_, [this] { build_dlog_table(); });
      return dlog_table_[index_of(e)];
    }
    return dlog_bsgs(e);
  }

  // Discrete log base an arbitrary verified generator g.
  u64 dlog(const FieldElem& e, const FieldElem& g) const {
    if (!is_generator(g)) throw DomainError("dlog base is not a generator");
    u64 de = dlog(e);
    if (g == generator()) return de;
    u64 dg = dlog(g);
    return mulmod(de, invmod(dg, q_ - 1), q_ - 1);
  }

  static constexpr u64 kDlogTableCap = 1ull << 20;

 private:
  friend const Field* make_field(u64 p, unsigned k, std::optional<std::vector<u64>> modulus);

  Field(u64 p, unsigned k, std::vector<u64> modulus)
      : p_(p), k_(k), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < k_; ++i) {
      if (q_ > (1ull << 62) / p_) throw DomainError("field order exceeds 2^63");
      q_ *= p_;
    }
  }

  void check(const FieldElem& e) const {
    if (e.field != this) throw DomainError("element belongs to a different field");
  }

  // Reduce a coefficient vector mod the monic modulus, in place.
  void reduce(std::vector<u64>& v) const {
    for (std::size_t i = v.size(); i-- > k_;) {
      u64 top = v[i];
      if (!top) continue;
      v[i] = 0;
      for (unsigned j = 0; j < k_; ++j)
        v[i - k_ + j] = (v[i - k_ + j] + mulmod(top, p_ - modulus_[j] % p_, p_)) % p_;
    }
  }

  void build_dlog_table() const {
    dlog_table_.assign(q_, 0);
    FieldElem cur = one();
    const FieldElem& g = generator();
    for (u64 d = 0; d < q_ - 1; ++d) {
      dlog_table_[index_of(cur)] = d;
      cur = mul(cur, g);
    }
  }

  u64 dlog_bsgs(const FieldElem& e) const {
    const u64 n = q_ - 1;
    u64 step = 1;
    while (step * step < n) ++step;
    std::call_once(bsgs_once_, [this, step] {
      bsgs_baby_.reserve(step);
      FieldElem cur = one();
      const FieldElem& g = generator();
      for (u64 j = 0; j < step; ++j) {
        bsgs_baby_.emplace(index_of(cur), j);
        cur = mul(cur, g);
      }
      bsgs_giant_ = std::make_unique<FieldElem>(inv(pow(generator(), step)));
    });
    FieldElem cur = e;
    for (u64 i = 0; i <= step; ++i) {
      auto it = bsgs_baby_.find(index_of(cur));
      if (it != bsgs_baby_.end()) return (i * step + it->second) % n;
      cur = mul(cur, *bsgs_giant_);
    }
    throw std::logic_error("BSGS failed");  // unreachable for nonzero input
  }

  u64 p_;
  unsigned k_;
  std::vector<u64> modulus_;
  u64 q_;

  mutable std::once_flag gen_once_, table_once_, fac_once_, bsgs_once_;
  mutable std::unique_ptr<FieldElem> gen_;
  mutable std::vector<u64> dlog_table_;
  mutable std::map<u64, unsigned> factors_;
  mutable std::unordered_map<u64, u64> bsgs_baby_;
  mutable std::unique_ptr<FieldElem> bsgs_giant_;
};

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) { return a.field->add(a, b); }
inline FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a.field->sub(a, b); }
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) { return a.field->mul(a, b); }

// --- Polynomial helpers over F_p used for modulus validation ---------------

namespace detail {

inline std::vector<u64> polmod_mul(const std::vector<u64>& a, const std::vector<u64>& b,
                                   const std::vector<u64>& f, u64 p) {
  const std::size_t k = f.size() - 1;
  std::vector<u64> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  for (std::size_t i = prod.size(); i-- > k;) {
    u64 top = prod[i];
    if (!top) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < k; ++j)
      prod[i - k + j] = (prod[i - k + j] + mulmod(top, p - f[j] % p, p)) % p;
  }
  prod.resize(k);
  return prod;
}

// x^(p^e) mod f
inline std::vector<u64> frobenius_power_of_x(const std::vector<u64>& f, u64 p, unsigned e) {
  const std::size_t k = f.size() - 1;
  std::vector<u64> x(k, 0);
  if (k == 1) {
    x[0] = p - f[0] % p;  // the root of a linear modulus
    // x stays fixed under Frobenius in F_p
    return x;
  }
  x[1] = 1;
  std::vector<u64> cur = x;
  for (unsigned i = 0; i < e; ++i) {
    // cur <- cur^p by square and multiply
    std::vector<u64> r(k, 0);
    r[0] = 1;
    std::vector<u64> base = cur;
    u64 ee = p;
    while (ee) {
      if (ee & 1) r = polmod_mul(r, base, f, p);
      base = polmod_mul(base, base, f, p);
      ee >>= 1;
    }
    cur = std::move(r);
  }
  return cur;
}

inline std::vector<u64> polgcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
  auto deg = [](const std::vector<u64>& v) {
    for (std::size_t i = v.size(); i-- > 0;)
      if (v[i]) return static_cast<long>(i);
    return -1l;
  };
  while (deg(b) >= 0) {
    // a mod b
    long db = deg(b);
    u64 lead_inv = invmod(b[static_cast<std::size_t>(db)], p);
    while (deg(a) >= db) {
      long da = deg(a);
      u64 c = mulmod(a[static_cast<std::size_t>(da)], lead_inv, p);
      for (long j = 0; j <= db; ++j)
        a[static_cast<std::size_t>(da - db + j)] =
            (a[static_cast<std::size_t>(da - db + j)] + p - mulmod(c, b[static_cast<std::size_t>(j)], p) % p) % p;
    }
    std::swap(a, b);
  }
  return a;
}

inline bool is_irreducible(const std::vector<u64>& f, u64 p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  // Rabin: x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for prime r | k
  std::vector<u64> xqk = frobenius_power_of_x(f, p, static_cast<unsigned>(k));
  std::vector<u64> x(k, 0);
  x[1] = 1;
  if (xqk != x) return false;
  for (const auto& [r, mult] : factor_u64(k)) {
    (void)mult;
    std::vector<u64> xe = frobenius_power_of_x(f, p, static_cast<unsigned>(k / r));
    std::vector<u64> diff(k, 0);
    for (std::size_t i = 0; i < k; ++i) diff[i] = (xe[i] + p - x[i]) % p;
    std::vector<u64> g = polgcd(diff, f, p);
    long dg = -1;
    for (std::size_t i = g.size(); i-- > 0;)
      if (g[i]) {
        dg = static_cast<long>(i);
        break;
      }
    if (dg != 0) return false;
  }
  return true;
}

}  // namespace detail

// --- Field registry ----------------------------------------------------------

// Returns the interned field for (p, k, modulus); the same triple always
// yields the same Field object.  With the modulus omitted, picks the monic
// irreducible of degree k whose coefficient vector has the smallest index
// encoding sum(c_i p^i), so runs are reproducible.
inline const Field* make_field(u64 p, unsigned k, std::optional<std::vector<u64>> modulus = {}) {
  if (!is_prime_u64(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw DomainError("extension degree must be >= 1");
  std::vector<u64> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != k + 1) throw DomainError("modulus degree mismatch");
    for (auto& c : mod) c %= p;
    if (mod[k] != 1) throw DomainError("modulus must be monic");
    if (!detail::is_irreducible(mod, p)) throw DomainError("modulus is reducible");
  } else {
    // count through coefficient encodings until an irreducible shows up
    u64 qk = 1;
    for (unsigned i = 0; i < k; ++i) qk *= p;
    for (u64 enc = 0;; ++enc) {
      if (enc >= qk) throw std::logic_error("no irreducible polynomial found");
      mod.assign(k + 1, 0);
      mod[k] = 1;
      u64 t = enc;
      for (unsigned i = 0; i < k; ++i) {
        mod[i] = t % p;
        t /= p;
      }
      if (k == 1 || detail::is_irreducible(mod, p)) break;
    }
  }

  struct Key {
    u64 p;
    unsigned k;
    std::vector<u64> mod;
    bool operator<(const Key& o) const {
      return std::tie(p, k, mod) < std::tie(o.p, o.k, o.mod);
    }
  };
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<Field>> registry;
  std::scoped_lock lock(mu);
  Key key{p, k, mod};
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(std::move(key), std::unique_ptr<Field>(new Field(p, k, mod))).first;
  return it->second.get();
}

// --- Subfield embeddings ----------------------------------------------------

// F_{p^d} -> F_{p^(de)}, realized by the root of the small modulus that comes
// first in generator-power order of the big field (deterministic, cached).
class Embedding {
 public:
  const Field* sub;
  const Field* sup;

  FieldElem apply(const FieldElem& e) const {
    if (e.field != sub) throw DomainError("embedding: element not in source field");
    FieldElem acc = sup->zero();
    for (std::size_t i = e.c.size(); i-- > 0;) {
      acc = sup->mul(acc, root_);
      acc = sup->add(acc, sup->scalar(e.c[i]));
    }
    return acc;
  }

  // Preimage of an element known to lie in the subfield.
  FieldElem down(const FieldElem& e) const {
    if (e.field != sup) throw DomainError("embedding: element not in target field");
    // Solve the F_p-linear system  M x = e  with M the matrix of the basis
    // images 1, root, root^2, ...
    const u64 p = sub->p();
    const unsigned rows = sup->k(), cols = sub->k();
    std::vector<std::vector<u64>> aug(rows, std::vector<u64>(cols + 1, 0));
    for (unsigned j = 0; j < cols; ++j)
      for (unsigned i = 0; i < rows; ++i) aug[i][j] = basis_img_[j].c[i];
    for (unsigned i = 0; i < rows; ++i) aug[i][cols] = e.c[i];
    unsigned rank = 0;
    std::vector<int> pivot_col(cols, -1);
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
      unsigned sel = rank;
      while (sel < rows && aug[sel][col] == 0) ++sel;
      if (sel == rows) continue;
      std::swap(aug[sel], aug[rank]);
      u64 inv = invmod(aug[rank][col], p);
      for (auto& x : aug[rank]) x = mulmod(x, inv, p);
      for (unsigned r = 0; r < rows; ++r) {
        if (r == rank || aug[r][col] == 0) continue;
        u64 f = aug[r][col];
        for (unsigned cc = 0; cc <= cols; ++cc)
          aug[r][cc] = (aug[r][cc] + p - mulmod(f, aug[rank][cc], p)) % p;
      }
      pivot_col[col] = static_cast<int>(rank);
      ++rank;
    }
    std::vector<u64> x(cols, 0);
    for (unsigned col = 0; col < cols; ++col)
      if (pivot_col[col] >= 0) x[col] = aug[static_cast<unsigned>(pivot_col[col])][cols];
    // consistency: rows beyond the rank must be zero
    for (unsigned r = rank; r < rows; ++r)
      if (aug[r][cols] != 0) throw DomainError("element does not lie in the subfield");
    FieldElem out = sub->from_coeffs(x);
    if (apply(out) != e) throw DomainError("element does not lie in the subfield");
    return out;
  }

 private:
  friend const Embedding& get_embedding(const Field* sub, const Field* sup);
  FieldElem root_;
  std::vector<FieldElem> basis_img_;  // root^0 .. root^(k_sub - 1)
};

inline const Embedding& get_embedding(const Field* sub, const Field* sup) {
  if (sub->p() != sup->p() || sup->k() % sub->k() != 0)
    throw DomainError("not a subfield relation");
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<Embedding>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find({sub, sup});
  if (it != cache.end()) return *it->second;

  auto emb = std::make_unique<Embedding>();
  emb->sub = sub;
  emb->sup = sup;
  if (sub == sup) {
    emb->root_ = sub->gen_root();
  } else {
    // roots of the sub modulus live in the unique subfield of size |sub|,
    // whose nonzero part is generated by g^((Q-1)/(q-1))
    const u64 q = sub->order(), Q = sup->order();
    FieldElem h = sup->pow(sup->generator(), (Q - 1) / (q - 1));
    const auto& f = sub->modulus();
    bool found = false;
    FieldElem cand = sup->one();
    for (u64 j = 0; j + 1 < q; ++j) {
      // evaluate f at cand
      FieldElem acc = sup->zero();
      for (std::size_t i = f.size(); i-- > 0;) {
        acc = sup->mul(acc, cand);
        acc = sup->add(acc, sup->scalar(f[i]));
      }
      if (acc.is_zero()) {
        emb->root_ = cand;
        found = true;
        break;
      }
      cand = sup->mul(cand, h);
    }
    if (!found && sub->k() == 1) {
      emb->root_ = sup->scalar(sub->p() - sub->modulus()[0] % sub->p());
      found = true;
    }
    if (!found) throw std::logic_error("no root of subfield modulus found");
  }
  emb->basis_img_.push_back(sup->one());
  for (unsigned i = 1; i < sub->k(); ++i)
    emb->basis_img_.push_back(sup->mul(emb->basis_img_.back(), emb->root_));
  return *cache.emplace(std::make_pair(sub, sup), std::move(emb)).first->second;
}

// --- Field operations from the classification pipeline ----------------------

// Relative degree of ext over base.
inline unsigned relative_degree(const Field* base, const Field* ext) {
  if (ext->p() != base->p() || ext->k() % base->k() != 0)
    throw DomainError("not an extension of the base field");
  return ext->k() / base->k();
}

// e + e^q + ... + e^(q^(d-1)), an element of the base field.
inline FieldElem trace_to_base(const FieldElem& e, const Field* base) {
  const Field* ext = e.field;
  unsigned d = relative_degree(base, ext);
  const u64 q = base->order();
  FieldElem acc = ext->zero();
  FieldElem cur = e;
  for (unsigned i = 0; i < d; ++i) {
    acc = ext->add(acc, cur);
    cur = ext->pow(cur, q);
  }
  if (base == ext) return acc;
  return get_embedding(base, ext).down(acc);
}

// x^((q^d - 1)/m) for x in F_{q^d}; lands in mu_m of the base field.  Returns
// the base-field value together with its exponent relative to omega, the m-th
// root g_base^((q-1)/m) attached to the base's canonical generator.
struct MuPower {
  FieldElem value;    // in the base field
  unsigned exponent;  // value = omega^exponent, 0 <= exponent < m
};

inline FieldElem mu_m_generator(const Field* base, unsigned m) {
  const u64 q = base->order();
  if (m == 0 || (q - 1) % m != 0) throw DomainError("m does not divide q-1");
  return base->pow(base->generator(), (q - 1) / m);
}

inline MuPower mu_m_power(const FieldElem& x, unsigned m, const Field* base) {
  if (x.is_zero()) throw DomainError("mu_m_power of zero");
  const Field* ext = x.field;
  relative_degree(base, ext);  // validates the extension relation
  const u64 q = base->order();
  if (m == 0 || (q - 1) % m != 0) throw DomainError("m does not divide q-1");
  FieldElem z = ext->pow(x, (ext->order() - 1) / m);
  FieldElem omega = mu_m_generator(base, m);
  const Embedding& emb = get_embedding(base, ext);
  FieldElem cand = base->one();
  for (unsigned j = 0; j < m; ++j) {
    if (emb.apply(cand) == z) return {cand, j};
    cand = base->mul(cand, omega);
  }
  throw std::logic_error("mu_m_power: value not in mu_m of the base");  // unreachable
}

// --- Etale algebras and multiplicative characters ---------------------------

// L = product of extension fields of one base, the classification datum's
// algebra part.  Factor order is significant (it fixes variable blocks).
struct Algebra {
  const Field* base = nullptr;
  std::vector<const Field*> factors;

  Algebra() = default;
  Algebra(const Field* base_, std::vector<const Field*> factors_)
      : base(base_), factors(std::move(factors_)) {
    for (const Field* f : factors) relative_degree(base, f);
  }

  unsigned n() const {
    unsigned total = 0;
    for (const Field* f : factors) total += relative_degree(base, f);
    return total;
  }
  unsigned degree(std::size_t i) const { return relative_degree(base, factors[i]); }
};

// Character of field^x of exact order m, pinned by chi(g) = zeta_m.
struct Character {
  const Field* field = nullptr;
  FieldElem g;
  unsigned m = 0;

  Character() = default;
  Character(const Field* f, FieldElem gen, unsigned order) : field(f), g(std::move(gen)), m(order) {
    if ((f->order() - 1) % m != 0) throw DomainError("character order does not divide q-1");
    if (!f->is_generator(g)) throw DomainError("character base point is not a generator");
  }
  static Character canonical(const Field* f, unsigned order) {
    return Character(f, f->generator(), order);
  }

  // chi(v) = zeta^(this exponent)
  unsigned exponent(const FieldElem& v) const {
    return static_cast<unsigned>(field->dlog(v, g) % m);
  }
};

}  // namespace fermat::gf

#endif  // FERMAT_GF_HPP
