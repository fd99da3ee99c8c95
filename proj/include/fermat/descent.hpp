// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_DESCENT_HPP
#define FERMAT_DESCENT_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fermat/errors.hpp"
#include "fermat/gf.hpp"

namespace fermat::descent {

using gf::Field;
using gf::FieldElem;
using gf::u64;

// --- Sparse homogeneous polynomials -----------------------------------------

// Degree-m homogeneous polynomial in n variables over a finite field, stored
// as exponent-vector -> nonzero coefficient.  Canonically ordered, so
// equality is structural.
class HomogeneousPoly {
 public:
  HomogeneousPoly(const Field* field, unsigned nvars, unsigned degree)
      : field_(field), nvars_(nvars), degree_(degree) {}

  const Field* field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const std::map<std::vector<unsigned>, FieldElem>& terms() const { return terms_; }

  void add_term(const std::vector<unsigned>& exps, const FieldElem& coeff) {
    if (exps.size() != nvars_) throw DomainError("term has wrong variable count");
    if (std::accumulate(exps.begin(), exps.end(), 0u) != degree_)
      throw DomainError("term is not homogeneous of the right degree");
    if (coeff.field != field_) throw DomainError("coefficient in wrong field");
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      if (!coeff.is_zero()) terms_.emplace(exps, coeff);
      return;
    }
    FieldElem s = it->second + coeff;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }

  FieldElem eval(const std::vector<FieldElem>& point) const {
    if (point.size() != nvars_) throw DomainError("point has wrong dimension");
    FieldElem acc = field_->zero();
    for (const auto& [exps, coeff] : terms_) {
      FieldElem term = coeff;
      for (unsigned i = 0; i < nvars_; ++i)
        if (exps[i]) term = term * field_->pow(point[i], exps[i]);
      acc = acc + term;
    }
    return acc;
  }

  // P(AX) for a square matrix A = (a_ij) acting by X_i -> sum_j a_ij X_j.
  HomogeneousPoly compose(const std::vector<std::vector<FieldElem>>& a) const {
    if (a.size() != nvars_) throw DomainError("matrix size mismatch");
    HomogeneousPoly out(field_, nvars_, degree_);
    for (const auto& [exps, coeff] : terms_) {
      std::map<std::vector<unsigned>, FieldElem> acc;
      acc.emplace(std::vector<unsigned>(nvars_, 0), coeff);
      for (unsigned i = 0; i < nvars_; ++i)
        for (unsigned rep = 0; rep < exps[i]; ++rep) acc = mul_linear(acc, a[i]);
      for (auto& [e, c] : acc) out.add_term(e, c);
    }
    return out;
  }

  // Same polynomial with coefficients pushed through a field embedding.
  HomogeneousPoly map_coeffs(const gf::Embedding& emb) const {
    HomogeneousPoly out(emb.sup, nvars_, degree_);
    for (const auto& [exps, coeff] : terms_) out.add_term(exps, emb.apply(coeff));
    return out;
  }

  friend bool operator==(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    return p.field_ == q.field_ && p.nvars_ == q.nvars_ && p.degree_ == q.degree_ &&
           p.terms_ == q.terms_;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    std::string out;
    for (const auto& [exps, coeff] : terms_) {
      if (!out.empty()) out += " + ";
      u64 c = coeff.c.size() == 1 ? coeff.c[0] : 0;
      bool scalar_coeff = true;
      for (std::size_t i = 1; i < coeff.c.size(); ++i)
        if (coeff.c[i]) scalar_coeff = false;
      if (scalar_coeff && !coeff.c.empty()) c = coeff.c[0];
      std::string cs;
      if (!scalar_coeff) {
        cs = "(";
        for (std::size_t i = 0; i < coeff.c.size(); ++i)
          cs += (i ? "," : "") + std::to_string(coeff.c[i]);
        cs += ")";
      } else if (c != 1) {
        cs = std::to_string(c);
      }
      std::string mono;
      for (unsigned i = 0; i < nvars_; ++i) {
        if (!exps[i]) continue;
        std::string v = i < names.size() ? names[i] : "X" + std::to_string(i + 1);
        mono += v;
        if (exps[i] > 1) mono += "^" + std::to_string(exps[i]);
      }
      if (cs.empty() && mono.empty()) mono = "1";
      out += cs + mono;
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::map<std::vector<unsigned>, FieldElem> mul_linear(
      const std::map<std::vector<unsigned>, FieldElem>& acc,
      const std::vector<FieldElem>& row) const {
    std::map<std::vector<unsigned>, FieldElem> out;
    for (const auto& [e, c] : acc) {
      for (unsigned j = 0; j < nvars_; ++j) {
        if (row[j].is_zero()) continue;
        std::vector<unsigned> e2 = e;
        ++e2[j];
        FieldElem c2 = c * row[j];
        auto it = out.find(e2);
        if (it == out.end()) {
          out.emplace(std::move(e2), c2);
        } else {
          it->second = it->second + c2;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    return out;
  }

  const Field* field_;
  unsigned nvars_, degree_;
  std::map<std::vector<unsigned>, FieldElem> terms_;
};

// X_1^m + ... + X_n^m.
inline HomogeneousPoly fermat_poly(const Field* field, unsigned m, unsigned n) {
  HomogeneousPoly p(field, n, m);
  for (unsigned i = 0; i < n; ++i) {
    std::vector<unsigned> e(n, 0);
    e[i] = m;
    p.add_term(e, field->one());
  }
  return p;
}

// --- Wreath product elements -------------------------------------------------

inline int permutation_sign(const std::vector<unsigned>& sigma) {
  std::vector<bool> seen(sigma.size(), false);
  int sign = 1;
  for (unsigned i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    unsigned len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = sigma[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Element (zeta_1,...,zeta_n) * sigma of the wreath product of S_n with mu_m,
// the roots of unity stored as exponents of the base field's canonical mu_m
// generator omega = g^((q-1)/m).  Composition follows the matrix model
// (zeta, sigma)(zeta', sigma') = (zeta * sigma(zeta'), sigma sigma').
struct WreathElement {
  const Field* base = nullptr;
  unsigned m = 0;
  std::vector<unsigned> zeta_exp;  // size n, exponents mod m
  std::vector<unsigned> sigma;     // size n, sigma[i] = image of i (0-indexed)

  unsigned n() const { return static_cast<unsigned>(sigma.size()); }

  static WreathElement identity(const Field* base, unsigned m, unsigned n) {
    WreathElement w{base, m, std::vector<unsigned>(n, 0), std::vector<unsigned>(n)};
    for (unsigned i = 0; i < n; ++i) w.sigma[i] = i;
    return w;
  }

  bool is_identity() const {
    for (unsigned i = 0; i < n(); ++i)
      if (zeta_exp[i] != 0 || sigma[i] != i) return false;
    return true;
  }

  friend WreathElement compose(const WreathElement& a, const WreathElement& b) {
    if (a.base != b.base || a.m != b.m || a.n() != b.n())
      throw DomainError("wreath elements from different groups");
    WreathElement out = a;
    std::vector<unsigned> sigma_inv(a.n());
    for (unsigned i = 0; i < a.n(); ++i) sigma_inv[a.sigma[i]] = i;
    for (unsigned i = 0; i < a.n(); ++i)
      out.zeta_exp[i] = (a.zeta_exp[i] + b.zeta_exp[sigma_inv[i]]) % a.m;
    for (unsigned i = 0; i < a.n(); ++i) out.sigma[i] = a.sigma[b.sigma[i]];
    return out;
  }

  friend bool operator==(const WreathElement& a, const WreathElement& b) {
    return a.base == b.base && a.m == b.m && a.zeta_exp == b.zeta_exp && a.sigma == b.sigma;
  }

  int sign() const { return permutation_sign(sigma); }

  std::vector<FieldElem> zeta_values() const {
    FieldElem omega = gf::mu_m_generator(base, m);
    std::vector<FieldElem> out;
    out.reserve(n());
    for (unsigned e : zeta_exp) out.push_back(base->pow(omega, e));
    return out;
  }

  std::string to_string() const {
    std::string out = "(";
    auto vals = zeta_values();
    for (unsigned i = 0; i < n(); ++i) {
      if (i) out += ",";
      out += std::to_string(vals[i].c[0]);
    }
    out += ")*";
    // cycle notation, 1-indexed, fixed points dropped
    std::vector<bool> seen(n(), false);
    std::string cyc;
    for (unsigned i = 0; i < n(); ++i) {
      if (seen[i] || sigma[i] == i) {
        seen[i] = true;
        continue;
      }
      cyc += "[";
      unsigned j = i;
      while (!seen[j]) {
        seen[j] = true;
        cyc += std::to_string(j + 1);
        j = sigma[j];
      }
      cyc += "]";
    }
    out += cyc.empty() ? "id" : cyc;
    return out;
  }
};

// --- Classification data ------------------------------------------------------

// The pair (L, x): an etale algebra over F_q together with a unit per factor.
// Stored with the representatives the caller chose; class-level notions
// (equivalence, enumeration) quotient afterwards.
struct FormDatum {
  unsigned m = 0;
  gf::Algebra algebra;
  std::vector<FieldElem> x;

  FormDatum() = default;
  FormDatum(unsigned m_, gf::Algebra alg, std::vector<FieldElem> x_)
      : m(m_), algebra(std::move(alg)), x(std::move(x_)) {
    if (m < 2) throw DomainError("exponent m must be at least 2");
    if (algebra.base->p() <= m) throw DomainError("requires char(F_q) > m");
    if (x.size() != algebra.factors.size()) throw DomainError("one unit per factor required");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].field != algebra.factors[i]) throw DomainError("x_i not in factor i");
      if (x[i].is_zero()) throw DomainError("x_i must be nonzero");
    }
  }

  unsigned n() const { return algebra.n(); }
  u64 q() const { return algebra.base->order(); }
  bool good_case() const { return (q() - 1) % m == 0; }
};

// --- Operations ----------------------------------------------------------------

namespace detail {
inline u64 multinomial_mod_p(unsigned m, const std::vector<unsigned>& parts, u64 p) {
  // valid because p > m, so no factor below is divisible by p
  std::vector<u64> fact(m + 1);
  fact[0] = 1;
  for (unsigned i = 1; i <= m; ++i) fact[i] = gf::mulmod(fact[i - 1], i % p, p);
  u64 denom = 1;
  for (unsigned v : parts) denom = gf::mulmod(denom, fact[v], p);
  return gf::mulmod(fact[m], gf::invmod(denom, p), p);
}
}  // namespace detail

// The generalized trace form: sum over factors of
// Tr_{L_i/F_q}[ (1/x_i) (e_1 X_1 + ... + e_d X_d)^m ], with the power basis
// 1, theta, ..., theta^(d-1) per factor unless bases are supplied.  The
// multiplier is literally 1/x_i for the stored representative, so different
// representatives of one class give GL_n(F_q)-equivalent but distinct
// polynomials.
inline HomogeneousPoly trace_form(const FormDatum& d,
                                  const std::vector<std::vector<FieldElem>>& bases = {}) {
  const Field* base = d.algebra.base;
  const unsigned n = d.n();
  HomogeneousPoly out(base, n, d.m);
  unsigned offset = 0;
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const Field* li = d.algebra.factors[i];
    const unsigned deg = d.algebra.degree(i);
    std::vector<FieldElem> basis;
    if (!bases.empty()) {
      basis = bases[i];
      if (basis.size() != deg) throw DomainError("basis size must match factor degree");
    } else {
      FieldElem theta = li->gen_root();
      FieldElem cur = li->one();
      for (unsigned j = 0; j < deg; ++j) {
        basis.push_back(cur);
        cur = li->mul(cur, theta);
      }
    }
    FieldElem w = li->inv(d.x[i]);
    // exponent vectors nu over this block with |nu| = m
    std::vector<unsigned> nu(deg, 0);
    nu[0] = d.m;
    while (true) {
      FieldElem prod = w;
      for (unsigned j = 0; j < deg; ++j)
        if (nu[j]) prod = li->mul(prod, li->pow(basis[j], nu[j]));
      u64 mult = detail::multinomial_mod_p(d.m, nu, base->p());
      FieldElem coeff = base->mul(base->scalar(mult), gf::trace_to_base(prod, base));
      if (!coeff.is_zero()) {
        std::vector<unsigned> exps(n, 0);
        for (unsigned j = 0; j < deg; ++j) exps[offset + j] = nu[j];
        out.add_term(exps, coeff);
      }
      // next composition of m into deg parts
      unsigned j = 0;
      while (j + 1 < deg && nu[j] == 0) ++j;
      if (j + 1 >= deg) break;
      unsigned head = nu[j];
      nu[j] = 0;
      nu[j + 1] += 1;
      nu[0] = head - 1;
    }
    offset += deg;
  }
  return out;
}

// Value of the classifying 1-cocycle on the arithmetic Frobenius: the product
// over factors of (x_i^((q^(n_i)-1)/m), 1, ..., 1) * z_(n_i) on consecutive
// index blocks.
inline WreathElement frobenius_cocycle(const FormDatum& d) {
  if (!d.good_case()) throw DomainError("frobenius_cocycle requires q = 1 mod m");
  const Field* base = d.algebra.base;
  WreathElement w = WreathElement::identity(base, d.m, d.n());
  unsigned offset = 0;
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const unsigned deg = d.algebra.degree(i);
    gf::MuPower mp = gf::mu_m_power(d.x[i], d.m, base);
    w.zeta_exp[offset] = mp.exponent;
    for (unsigned t = 0; t < deg; ++t) w.sigma[offset + t] = offset + (t + 1) % deg;
    offset += deg;
  }
  return w;
}

namespace detail {

// Residue data of a datum after transport to the canonical (default-modulus)
// fields: per factor, the degree, gcd(m, q^deg - 1), and dlog(x) mod that gcd.
struct ResidueVector {
  std::vector<unsigned> degree;
  std::vector<u64> modulus;  // gcd(m, q^deg - 1)
  std::vector<u64> residue;
};

inline ResidueVector residues(const FormDatum& d) {
  ResidueVector rv;
  const Field* base = d.algebra.base;
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const Field* li = d.algebra.factors[i];
    const unsigned deg = d.algebra.degree(i);
    const Field* canon = gf::make_field(base->p(), li->k());
    FieldElem xi = d.x[i];
    if (li != canon) xi = gf::get_embedding(li, canon).apply(xi);  // equal degree: isomorphism
    u64 g = gf::gcd_u64(d.m, canon->order() - 1);
    rv.degree.push_back(deg);
    rv.modulus.push_back(g);
    rv.residue.push_back(canon->dlog(xi) % g);
  }
  return rv;
}

// Shift of the residue vector induced by scaling x by lambda in F_q^x.
inline std::vector<u64> lambda_shift(const FormDatum& d, const FieldElem& lambda) {
  std::vector<u64> s;
  const Field* base = d.algebra.base;
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const Field* canon = gf::make_field(base->p(), d.algebra.factors[i]->k());
    FieldElem l = gf::get_embedding(base, canon).apply(lambda);
    u64 g = gf::gcd_u64(d.m, canon->order() - 1);
    s.push_back(canon->dlog(l) % g);
  }
  return s;
}

// All permutations of {0..r-1} preserving the factor degrees.
inline std::vector<std::vector<unsigned>> degree_preserving_perms(
    const std::vector<unsigned>& degs) {
  std::vector<unsigned> idx(degs.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::vector<std::vector<unsigned>> out;
  std::sort(idx.begin(), idx.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (degs[idx[i]] != degs[i]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace detail

// Classification-datum equivalence: the factor-degree multisets must agree
// and some lambda in F_q^x, factor matching, Galois powers, and m-th-power
// adjustments must identify the residue data.
inline bool equivalent(const FormDatum& d1, const FormDatum& d2) {
  if (d1.m != d2.m || d1.algebra.base->order() != d2.algebra.base->order() ||
      d1.algebra.base->p() != d2.algebra.base->p())
    throw DomainError("equivalent: data must share m and q");
  if (d1.n() != d2.n()) return false;
  {
    std::vector<unsigned> a, b;
    for (std::size_t i = 0; i < d1.algebra.factors.size(); ++i) a.push_back(d1.algebra.degree(i));
    for (std::size_t i = 0; i < d2.algebra.factors.size(); ++i) b.push_back(d2.algebra.degree(i));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }

  detail::ResidueVector r1 = detail::residues(d1);
  detail::ResidueVector r2 = detail::residues(d2);
  const Field* base = d1.algebra.base;
  const u64 q = base->order();

  std::vector<unsigned> degs1 = r1.degree;
  auto perms = detail::degree_preserving_perms(degs1);
  // match factors of d2 against permuted factors of d1
  for (u64 lam_idx = 1; lam_idx < q; ++lam_idx) {
    FieldElem lambda = base->elem_of_index(lam_idx);
    if (lambda.is_zero()) continue;
    std::vector<u64> shift = detail::lambda_shift(d1, lambda);
    for (const auto& perm : perms) {
      // need degree(d2 factor i) == degree(d1 factor perm[i])
      bool degree_ok = true;
      for (std::size_t i = 0; i < perm.size(); ++i)
        if (r2.degree[i] != r1.degree[perm[i]]) {
          degree_ok = false;
          break;
        }
      if (!degree_ok) continue;
      bool all = true;
      for (std::size_t i = 0; i < perm.size() && all; ++i) {
        u64 g = r2.modulus[i];
        u64 target = r2.residue[i];
        // Galois powers act on dlogs by multiplication by q^j
        bool hit = false;
        u64 qm = q % g;
        u64 mult = 1 % g;
        for (unsigned j = 0; j < r1.degree[perm[i]]; ++j) {
          u64 cand = (gf::mulmod(mult, r1.residue[perm[i]], g) + shift[perm[i]]) % g;
          if (cand == target) {
            hit = true;
            break;
          }
          mult = gf::mulmod(mult, qm, g);
        }
        if (!hit) all = false;
      }
      if (all) return true;
    }
  }
  return false;
}

// One canonical representative per equivalence class at (m, n, q): for each
// partition of n, residue vectors modulo factor swaps, Galois, m-th powers
// and global scaling, canonical = lexicographically minimal orbit member.
inline std::vector<FormDatum> enumerate_classes(unsigned m, unsigned n, u64 q) {
  if ((q - 1) % m != 0) throw DomainError("enumerate_classes requires q = 1 mod m");
  auto qfac = gf::factor_u64(q);
  if (qfac.size() != 1) throw DomainError("q must be a prime power");
  const Field* base = gf::make_field(qfac.begin()->first, qfac.begin()->second);

  // partitions of n, descending parts
  std::vector<std::vector<unsigned>> partitions;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned rest, unsigned maxpart) -> void {
    if (rest == 0) {
      partitions.push_back(cur);
      return;
    }
    for (unsigned part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);

  std::vector<FormDatum> out;
  for (const auto& part : partitions) {
    std::vector<const Field*> factors;
    for (unsigned deg : part) {
      u64 qd = 1;
      for (unsigned i = 0; i < deg; ++i) {
        qd *= q;
        if (qd > Field::kDlogTableCap)
          throw BudgetExceeded("factor field exceeds the dlog table cap");
      }
      factors.push_back(gf::make_field(base->p(), base->k() * deg));
    }
    const unsigned r = static_cast<unsigned>(part.size());
    // shift vector for lambda = canonical generator of F_q^x
    std::vector<u64> gen_shift(r);
    for (unsigned i = 0; i < r; ++i) {
      FieldElem l = gf::get_embedding(base, factors[i]).apply(base->generator());
      gen_shift[i] = factors[i]->dlog(l) % m;
    }
    auto perms = detail::degree_preserving_perms(part);

    u64 total = 1;
    for (unsigned i = 0; i < r; ++i) total *= m;
    std::vector<bool> visited(total, false);
    auto decode = [&](u64 code) {
      std::vector<u64> v(r);
      for (unsigned i = 0; i < r; ++i) {
        v[i] = code % m;
        code /= m;
      }
      return v;
    };
    auto encode = [&](const std::vector<u64>& v) {
      u64 code = 0;
      for (unsigned i = r; i-- > 0;) code = code * m + v[i];
      return code;
    };

    for (u64 start = 0; start < total; ++start) {
      if (visited[start]) continue;
      // BFS the orbit under swaps and lambda-shifts; Galois is trivial on
      // residues mod m because q = 1 mod m
      std::vector<u64> orbit{start};
      visited[start] = true;
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        std::vector<u64> v = decode(orbit[head]);
        std::vector<std::vector<u64>> nexts;
        for (const auto& perm : perms) {
          std::vector<u64> w(r);
          for (unsigned i = 0; i < r; ++i) w[i] = v[perm[i]];
          nexts.push_back(std::move(w));
        }
        {
          std::vector<u64> w(r);
          for (unsigned i = 0; i < r; ++i) w[i] = (v[i] + gen_shift[i]) % m;
          nexts.push_back(std::move(w));
        }
        for (auto& w : nexts) {
          u64 code = encode(w);
          if (!visited[code]) {
            visited[code] = true;
            orbit.push_back(code);
          }
        }
      }
      // lexicographic minimum over the orbit in vector order
      std::vector<u64> bestvec = decode(orbit[0]);
      for (u64 code : orbit) bestvec = std::min(bestvec, decode(code));
      std::vector<FieldElem> x;
      for (unsigned i = 0; i < r; ++i)
        x.push_back(factors[i]->pow(factors[i]->generator(), bestvec[i]));
      out.emplace_back(m, gf::Algebra(base, factors), std::move(x));
    }
  }
  return out;
}

// |Aut| of the trace form: product of |L_i intersect mu_m| times the number
// of algebra automorphisms fixing the class of x.
inline u64 aut_group_order(const FormDatum& d) {
  detail::ResidueVector rv = detail::residues(d);
  const unsigned r = static_cast<unsigned>(rv.degree.size());
  const u64 q = d.algebra.base->order();
  u64 mu_part = 1;
  for (unsigned i = 0; i < r; ++i) mu_part *= rv.modulus[i];

  u64 fixing = 0;
  auto perms = detail::degree_preserving_perms(rv.degree);
  std::vector<unsigned> gal(r, 0);
  for (const auto& perm : perms) {
    // count Galois power choices making a(x)/x an m-th power factorwise
    u64 count = 1;
    for (unsigned i = 0; i < r && count; ++i) {
      u64 g = rv.modulus[i];
      u64 matches = 0;
      u64 qm = q % g;
      u64 mult = 1 % g;
      for (unsigned j = 0; j < rv.degree[i]; ++j) {
        if (gf::mulmod(mult, rv.residue[perm[i]], g) == rv.residue[i]) ++matches;
        mult = gf::mulmod(mult, qm, g);
      }
      count *= matches;
    }
    fixing += count;
  }
  return mu_part * fixing;
}

// Builds the matrix B = (phi(e_j) / y_phi) over a splitting extension and
// symbolically checks Fermat(BX) == trace_form(d).  True on every valid
// datum; false only signals an internal inconsistency.
inline bool verify_isomorphy(const FormDatum& d) {
  const Field* base = d.algebra.base;
  const u64 q = base->order();
  const unsigned n = d.n();

  // degree of a splitting field: per factor, x_i must become an m-th power
  unsigned bigdeg = 1;
  std::vector<unsigned> ext_of(d.algebra.factors.size());
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const Field* li = d.algebra.factors[i];
    unsigned deg = d.algebra.degree(i);
    unsigned e = 1;
    for (;; ++e) {
      // x is an m-th power in F_{q^(deg*e)} iff dlog * (q^(deg e)-1)/(q^deg-1) = 0 mod m
      u64 res = li->dlog(d.x[i]) % d.m;
      // sum_{j<e} q^(deg*j) mod m
      u64 s = 0, qq = 1;
      u64 qdeg_mod = 1;
      for (unsigned t = 0; t < deg; ++t) qdeg_mod = gf::mulmod(qdeg_mod, q % d.m, d.m);
      for (unsigned j = 0; j < e; ++j) {
        s = (s + qq) % d.m;
        qq = gf::mulmod(qq, qdeg_mod, d.m);
      }
      if (gf::mulmod(res, s, d.m) % d.m == 0) break;
      if (e > d.m) throw std::logic_error("no splitting degree found");
    }
    ext_of[i] = deg * e;
    bigdeg = std::lcm(bigdeg, deg * e);
  }
  const Field* K = gf::make_field(base->p(), base->k() * bigdeg);

  // rows of B
  std::vector<std::vector<FieldElem>> rows;
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const Field* li = d.algebra.factors[i];
    unsigned deg = d.algebra.degree(i);
    const gf::Embedding& emb = gf::get_embedding(li, K);
    FieldElem xK = emb.apply(d.x[i]);
    // y with y^m = xK, via dlog along the canonical generator of K
    u64 dl = K->dlog(xK);
    if (dl % d.m != 0) throw std::logic_error("x not an m-th power in splitting field");
    FieldElem y = K->pow(K->generator(), dl / d.m);
    FieldElem theta = emb.apply(li->gen_root());
    for (unsigned t = 0; t < deg; ++t) {
      // row for phi = Frob^t on this factor
      u64 qt = 1;
      for (unsigned s = 0; s < t; ++s) qt *= q;  // q^t <= q^deg <= |K|, exact
      FieldElem theta_t = K->pow(theta, qt);
      FieldElem y_t = K->pow(y, qt);
      FieldElem y_inv = K->inv(y_t);
      std::vector<FieldElem> row(n, K->zero());
      FieldElem cur = y_inv;  // theta_t^0 / y_t
      unsigned offset = 0;
      for (std::size_t b = 0; b < i; ++b) offset += d.algebra.degree(b);
      for (unsigned j = 0; j < deg; ++j) {
        row[offset + j] = cur;
        cur = K->mul(cur, theta_t);
      }
      rows.push_back(std::move(row));
    }
  }

  // Fermat(BX) expanded over K
  HomogeneousPoly lhs(K, n, d.m);
  for (const auto& row : rows) {
    std::map<std::vector<unsigned>, FieldElem> acc;
    acc.emplace(std::vector<unsigned>(n, 0), K->one());
    for (unsigned rep = 0; rep < d.m; ++rep) {
      std::map<std::vector<unsigned>, FieldElem> nxt;
      for (const auto& [e, c] : acc) {
        for (unsigned j = 0; j < n; ++j) {
          if (row[j].is_zero()) continue;
          std::vector<unsigned> e2 = e;
          ++e2[j];
          FieldElem c2 = c * row[j];
          auto it = nxt.find(e2);
          if (it == nxt.end())
            nxt.emplace(std::move(e2), c2);
          else {
            it->second = it->second + c2;
            if (it->second.is_zero()) nxt.erase(it);
          }
        }
      }
      acc = std::move(nxt);
    }
    for (const auto& [e, c] : acc) lhs.add_term(e, c);
  }

  HomogeneousPoly rhs = trace_form(d).map_coeffs(gf::get_embedding(base, K));
  return lhs == rhs;
}

}  // namespace fermat::descent

#endif  // FERMAT_DESCENT_HPP
