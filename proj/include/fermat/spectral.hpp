// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_SPECTRAL_HPP
#define FERMAT_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "fermat/cyclo.hpp"
#include "fermat/descent.hpp"
#include "fermat/errors.hpp"
#include "fermat/gf.hpp"

namespace fermat::spectral {

using cyclo::CyclotomicInt;
using cyclo::CycPolynomial;
using descent::FormDatum;
using descent::WreathElement;
using gf::Character;
using gf::Field;
using gf::FieldElem;
using gf::u64;

// --- Character vectors -------------------------------------------------------

// Element of A^m_n: entries in Z/m, all nonzero, summing to zero.
struct CharVector {
  unsigned m = 0, n = 0;
  std::vector<unsigned> a;

  friend bool operator==(const CharVector& x, const CharVector& y) {
    return x.m == y.m && x.a == y.a;
  }
  friend bool operator<(const CharVector& x, const CharVector& y) { return x.a < y.a; }
};

inline bool in_char_set(const CharVector& v) {
  unsigned sum = 0;
  for (unsigned e : v.a) {
    if (e == 0 || e >= v.m) return false;
    sum = (sum + e) % v.m;
  }
  return sum == 0 && v.a.size() == v.n;
}

// All of A^m_n in lexicographic order.
inline std::vector<CharVector> characters(unsigned m, unsigned n) {
  if (m < 2 || n < 2) throw DomainError("characters: need m >= 2 and n >= 2");
  double size_estimate = n * std::log2(double(m - 1));
  if (size_estimate > 24) throw BudgetExceeded("A^m_n too large to enumerate");
  std::vector<CharVector> out;
  std::vector<unsigned> a(n, 1);
  while (true) {
    unsigned sum = std::accumulate(a.begin(), a.end(), 0u) % m;
    if (sum == 0) out.push_back({m, n, a});
    unsigned i = n;
    while (i > 0 && a[i - 1] == m - 1) a[--i] = 1;
    if (i == 0) break;
    ++a[i - 1];
  }
  return out;
}

// Partition into S_n-orbits; orbit members lex-sorted, orbits ordered by
// their sorted (canonical) representative.
inline std::vector<std::vector<CharVector>> orbits(const std::vector<CharVector>& chars) {
  std::map<std::vector<unsigned>, std::vector<CharVector>> groups;
  for (const auto& v : chars) {
    std::vector<unsigned> key = v.a;
    std::sort(key.begin(), key.end());
    groups[key].push_back(v);
  }
  std::vector<std::vector<CharVector>> out;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// --- Jacobi sums ---------------------------------------------------------------

// Direct summation over tuples with 1 + v_2 + ... + v_n = 0; the independent
// oracle for the Gauss-sum route, O(q^(n-2)).
inline CyclotomicInt jacobi_direct(const CharVector& a, const Character& chi) {
  if (!in_char_set(a)) throw DomainError("jacobi: vector not in A^m_n");
  if (chi.m != a.m) throw DomainError("jacobi: character order mismatch");
  const Field* f = chi.field;
  const u64 q = f->order();
  const unsigned n = a.n;

  // chi exponents by element index
  std::vector<unsigned> expo(q, 0);
  std::vector<FieldElem> elems;
  elems.reserve(q);
  for (u64 i = 0; i < q; ++i) {
    elems.push_back(f->elem_of_index(i));
    if (i) expo[i] = chi.exponent(elems[i]);
  }

  std::vector<u64> count(a.m, 0);
  const FieldElem minus_one = f->neg(f->one());
  if (n == 2) {
    count[(static_cast<u64>(expo[f->index_of(minus_one)]) * a.a[1]) % a.m] = 1;
  } else {
    // odometer over v_2..v_(n-1) in F_q^x
    std::vector<u64> idx(n - 2, 1);
    while (true) {
      FieldElem s = f->one();
      for (u64 i : idx) s = f->add(s, elems[i]);
      FieldElem vn = f->neg(s);
      if (!vn.is_zero()) {
        u64 e = 0;
        for (unsigned j = 0; j < n - 2; ++j) e += static_cast<u64>(expo[idx[j]]) * a.a[j + 1];
        e += static_cast<u64>(expo[f->index_of(vn)]) * a.a[n - 1];
        ++count[e % a.m];
      }
      unsigned j = 0;
      while (j < n - 2 && idx[j] == q - 1) idx[j++] = 1;
      if (j == n - 2) break;
      ++idx[j];
    }
  }
  CyclotomicInt out(a.m);
  for (unsigned r = 0; r < a.m; ++r) {
    if (!count[r]) continue;
    CyclotomicInt z = CyclotomicInt::zeta_power(a.m, r);
    std::vector<BigInt> c = z.coeffs();
    for (auto& x : c) x *= BigInt::from_u64(count[r]);
    out += CyclotomicInt(a.m, std::move(c));
  }
  if (n % 2 == 1) out = -out;
  return out;
}

namespace detail {

// Gauss sum of chi^j with the standard additive character, computed in
// Z[zeta_m][y]/Phi_p.
inline cyclo::CycTensor gauss_sum(const Character& chi, unsigned j) {
  const Field* f = chi.field;
  const u64 q = f->order();
  const unsigned p = static_cast<unsigned>(f->p());
  const Field* fp = gf::make_field(f->p(), 1);
  // counts[chi-exponent][trace value]
  std::vector<std::vector<u64>> counts(chi.m, std::vector<u64>(p, 0));
  for (u64 i = 1; i < q; ++i) {
    FieldElem x = f->elem_of_index(i);
    unsigned ce = static_cast<unsigned>((static_cast<u64>(chi.exponent(x)) * j) % chi.m);
    u64 tr = gf::trace_to_base(x, fp).c[0];
    ++counts[ce][tr];
  }
  cyclo::CycTensor g(chi.m, p);
  for (unsigned ce = 0; ce < chi.m; ++ce)
    for (unsigned tr = 0; tr < p; ++tr) {
      if (!counts[ce][tr]) continue;
      std::vector<BigInt> c = CyclotomicInt::zeta_power(chi.m, ce).coeffs();
      for (auto& v : c) v *= BigInt::from_u64(counts[ce][tr]);
      g.add_scaled_ypower(CyclotomicInt(chi.m, std::move(c)), tr);
    }
  return g;
}

}  // namespace detail

// Gauss-sum product route: J(a) = (-1)^n (1/q) prod_i g(chi^(a_i)).  The
// product of Gauss sums over a zero-sum character vector is free of the
// p-th roots of unity, so the constant slice of the tensor ring carries the
// whole value; exact division by q then lands in Z[zeta_m].
inline CyclotomicInt jacobi_gauss(const CharVector& a, const Character& chi) {
  if (!in_char_set(a)) throw DomainError("jacobi: vector not in A^m_n");
  if (chi.m != a.m) throw DomainError("jacobi: character order mismatch");
  const Field* f = chi.field;
  const unsigned p = static_cast<unsigned>(f->p());

  std::map<unsigned, cyclo::CycTensor> cache;
  cyclo::CycTensor prod = cyclo::CycTensor::one(a.m, p);
  for (unsigned ai : a.a) {
    auto it = cache.find(ai);
    if (it == cache.end()) it = cache.emplace(ai, detail::gauss_sum(chi, ai)).first;
    prod = prod * it->second;
  }
  if (!prod.is_constant())
    throw std::logic_error("Gauss-sum product did not collapse to Z[zeta_m]");
  CyclotomicInt c = prod.constant_part();
  BigInt qq = BigInt::from_u64(f->order());
  std::vector<BigInt> coeffs = c.coeffs();
  for (auto& v : coeffs) v = v.divexact(qq);
  CyclotomicInt out(a.m, std::move(coeffs));
  if (a.n % 2 == 1) out = -out;
  return out;
}

// Direct summation is the oracle; the Gauss product is used above the
// crossover where direct summation would be slow.
inline CyclotomicInt jacobi(const CharVector& a, const Character& chi) {
  double work = (a.n - 2) * std::log10(double(chi.field->order()));
  if (work > 7.0) return jacobi_gauss(a, chi);
  return jacobi_direct(a, chi);
}

// --- The embedding iota and its calibration ----------------------------------

// iota: mu_m(F_q) -> <zeta> in Z[zeta_m], pinned by iota(omega) = zeta^u for
// omega = g^((q-1)/m) with g the character's base point.  u is calibrated
// once per character against brute-force counts of diagonal forms (the
// compatible choice is not an a-priori convention here).
struct Iota {
  const Field* base = nullptr;
  unsigned m = 0, u = 1;
  std::map<u64, unsigned> exp_by_index;  // element index in mu_m -> zeta exponent

  static Iota make(const Character& chi, unsigned u) {
    Iota io;
    io.base = chi.field;
    io.m = chi.m;
    io.u = u;
    FieldElem omega = chi.field->pow(chi.g, (chi.field->order() - 1) / chi.m);
    FieldElem cur = chi.field->one();
    for (unsigned j = 0; j < chi.m; ++j) {
      io.exp_by_index[chi.field->index_of(cur)] = (j * u) % chi.m;
      cur = chi.field->mul(cur, omega);
    }
    return io;
  }

  unsigned exp_of(const FieldElem& v) const {
    auto it = exp_by_index.find(base->index_of(v));
    if (it == exp_by_index.end()) throw DomainError("iota: element not in mu_m");
    return it->second;
  }
};

// --- Frobenius blocks and characteristic polynomials -------------------------

// Monomial action of the twisted Frobenius on one orbit block: the index
// permutation b -> sigma^(-1) b and one unit multiplier per index; the
// common Jacobi factor stays separate.
struct OrbitBlock {
  std::vector<CharVector> orbit;  // lex-sorted
  CyclotomicInt jacobi_value;
  std::vector<unsigned> perm;        // image index of each orbit position
  std::vector<CyclotomicInt> units;  // +-zeta^e per source position
};

inline OrbitBlock frobenius_block(const std::vector<CharVector>& orbit, const CyclotomicInt& jac,
                                  const WreathElement& bf, const Iota& iota) {
  OrbitBlock blk{orbit, jac, {}, {}};
  const unsigned m = orbit[0].m;
  const unsigned n = orbit[0].n;
  if (bf.n() != n) throw DomainError("cocycle arity does not match character length");
  std::map<std::vector<unsigned>, unsigned> pos;
  for (unsigned i = 0; i < orbit.size(); ++i) pos[orbit[i].a] = i;
  const int sgn = bf.sign();
  std::vector<FieldElem> zetas = bf.zeta_values();
  for (unsigned i = 0; i < orbit.size(); ++i) {
    const auto& b = orbit[i].a;
    // target sigma^(-1) b, components (sigma^(-1) b)_j = b_(sigma(j))
    std::vector<unsigned> target(n);
    u64 e = 0;
    for (unsigned j = 0; j < n; ++j) {
      target[j] = b[bf.sigma[j]];
      e += static_cast<u64>(iota.exp_of(zetas[j])) * b[bf.sigma[j]];
    }
    auto it = pos.find(target);
    if (it == pos.end()) throw std::logic_error("orbit not closed under sigma");
    blk.perm.push_back(it->second);
    CyclotomicInt unit = CyclotomicInt::zeta_power(m, static_cast<long>(e % m));
    if (sgn < 0) unit = -unit;
    blk.units.push_back(unit);
  }
  return blk;
}

// det(1 - M t) for the monomial matrix via cycle decomposition: each cycle of
// length l with multiplier product u contributes 1 - u t^l.  Never builds a
// dense matrix.
inline CycPolynomial block_charpoly(const OrbitBlock& blk) {
  const unsigned m = blk.jacobi_value.order();
  CycPolynomial acc = CycPolynomial::one(m);
  std::vector<bool> seen(blk.orbit.size(), false);
  for (unsigned i = 0; i < blk.orbit.size(); ++i) {
    if (seen[i]) continue;
    CyclotomicInt prod = CyclotomicInt::one(m);
    unsigned len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      prod = prod * (blk.jacobi_value * blk.units[j]);
      j = blk.perm[j];
      ++len;
    }
    acc = acc * CycPolynomial::one_minus_ut(prod, len);
  }
  return acc;
}

// --- Zeta functions -----------------------------------------------------------

// Exact zeta function of a hypersurface of degree m in n variables over F_q:
// an integral middle-cohomology factor placed by parity, over the fixed
// denominator prod (1 - q^i t), i = 0..n-2.
struct ZetaFunction {
  unsigned m = 0, n = 0;
  u64 q = 0;
  cyclo::IntPoly vprim;  // constant term 1
  bool vprim_in_numerator = false;

  // N_1..N_k from the logarithmic expansion; exact integers.
  std::vector<BigInt> counts(unsigned k) const {
    std::vector<BigInt> sums = cyclo::reciprocal_root_power_sums(vprim, k);
    std::vector<BigInt> out;
    BigInt qb = BigInt::from_u64(q);
    for (unsigned i = 1; i <= k; ++i) {
      BigInt total(0);
      for (unsigned j = 0; j + 2 <= n; ++j) total += BigInt::pow(BigInt::pow(qb, j), i);
      // numerator factor contributes -p_i, denominator +p_i
      if (vprim_in_numerator)
        total -= sums[i - 1];
      else
        total += sums[i - 1];
      out.push_back(total);
    }
    return out;
  }

  friend bool operator==(const ZetaFunction& a, const ZetaFunction& b) {
    return a.m == b.m && a.n == b.n && a.q == b.q && a.vprim == b.vprim &&
           a.vprim_in_numerator == b.vprim_in_numerator;
  }
};

namespace detail {

inline void check_purity(const CyclotomicInt& eigen_product, u64 q, unsigned n, unsigned len) {
  CyclotomicInt sq = cyclo::cyc_abs_square(eigen_product);
  if (!sq.is_rational_integer())
    throw std::logic_error("purity: |eigenvalue|^2 not rational");
  BigInt expect = BigInt::pow(BigInt::from_u64(q), static_cast<unsigned long>(len) * (n - 2));
  if (sq.rational_part() != expect)
    throw std::logic_error("purity violated: |eigenvalue|^2 != q^((n-2) len)");
}

// Assemble a zeta function from per-orbit factors, checking purity cycle by
// cycle through the charpoly route (the factors arrive already multiplied
// out, so purity is checked by the callers before this point).
inline ZetaFunction assemble(unsigned m, unsigned n, u64 q,
                             const std::vector<CycPolynomial>& factors) {
  CycPolynomial prim = cyclo::cycpoly_product(m, factors);
  ZetaFunction z;
  z.m = m;
  z.n = n;
  z.q = q;
  z.vprim = cyclo::to_integer_poly(prim);
  z.vprim_in_numerator = (n % 2 == 1);
  return z;
}

}  // namespace detail

// Calibration of the exponent u in iota, cached per character: the unique
// u for which zeta of diagonal data reproduces brute-force point counts
// over F_q.  Diagonal counts are done here by direct projective enumeration
// so the check is independent of the oracle module.
inline u64 brute_diagonal_count(const Field* f, unsigned m, const std::vector<FieldElem>& coefs) {
  const unsigned n = static_cast<unsigned>(coefs.size());
  const u64 q = f->order();
  u64 total = 0;
  // charts: first nonzero coordinate = 1
  std::vector<FieldElem> point(n, f->zero());
  for (unsigned chart = 0; chart < n; ++chart) {
    u64 free_count = 1;
    for (unsigned i = chart + 1; i < n; ++i) free_count *= q;
    for (u64 code = 0; code < free_count; ++code) {
      for (unsigned i = 0; i < chart; ++i) point[i] = f->zero();
      point[chart] = f->one();
      u64 c = code;
      for (unsigned i = chart + 1; i < n; ++i) {
        point[i] = f->elem_of_index(c % q);
        c /= q;
      }
      FieldElem acc = f->zero();
      for (unsigned i = 0; i < n; ++i)
        acc = f->add(acc, f->mul(coefs[i], f->pow(point[i], m)));
      if (acc.is_zero()) ++total;
    }
  }
  return total;
}

inline ZetaFunction zeta_with_iota(const FormDatum& d, const Character& chi, unsigned u);

inline unsigned calibrate_iota(const Character& chi) {
  struct Key {
    const Field* f;
    u64 g;
    unsigned m;
    bool operator<(const Key& o) const { return std::tie(f, g, m) < std::tie(o.f, o.g, o.m); }
  };
  static std::mutex mu;
  static std::map<Key, unsigned> cache;
  Key key{chi.field, chi.field->index_of(chi.g), chi.m};
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const Field* f = chi.field;
  const u64 q = f->order();
  std::vector<unsigned> candidates;
  for (unsigned u = 1; u < chi.m; ++u)
    if (std::gcd(u, chi.m) == 1) candidates.push_back(u);

  // diagonal test data X_1^m + X_2^m + c X_3^m across all c in F_q^x
  for (u64 ci = 1; ci < q && candidates.size() > 1; ++ci) {
    FieldElem c = f->elem_of_index(ci);
    if (c.is_zero()) continue;
    std::vector<const Field*> facs{f, f, f};
    std::vector<FieldElem> x{f->one(), f->one(), f->inv(c)};
    FormDatum diag(chi.m, gf::Algebra(f, facs), x);
    u64 truth = brute_diagonal_count(f, chi.m, {f->one(), f->one(), c});
    std::vector<unsigned> survivors;
    for (unsigned u : candidates) {
      ZetaFunction z = zeta_with_iota(diag, chi, u);
      std::vector<BigInt> n1 = z.counts(1);
      if (n1[0] == BigInt::from_u64(truth)) survivors.push_back(u);
    }
    candidates = survivors;
  }
  if (candidates.empty()) throw std::logic_error("iota calibration found no consistent embedding");
  unsigned u = candidates.front();
  std::scoped_lock lock(mu);
  cache.emplace(key, u);
  return u;
}

// Full twisted zeta via the monomial Frobenius action on the primitive part.
inline ZetaFunction zeta_with_iota(const FormDatum& d, const Character& chi, unsigned u) {
  if (!d.good_case()) throw DomainError("zeta requires q = 1 mod m");
  if (chi.field != d.algebra.base) throw DomainError("character field mismatch");
  if (chi.m != d.m) throw DomainError("character order mismatch");
  const unsigned m = d.m, n = d.n();
  const u64 q = d.q();

  WreathElement bf = descent::frobenius_cocycle(d);
  Iota iota = Iota::make(chi, u);
  std::vector<CharVector> chars = characters(m, n);
  std::vector<std::vector<CharVector>> orbs = orbits(chars);

  std::vector<CycPolynomial> factors;
  for (const auto& orbit : orbs) {
    CharVector rep = orbit.front();
    std::vector<unsigned> sorted = rep.a;
    std::sort(sorted.begin(), sorted.end());
    rep.a = sorted;
    CyclotomicInt jac = jacobi(rep, chi);
    OrbitBlock blk = frobenius_block(orbit, jac, bf, iota);
    CycPolynomial cp = block_charpoly(blk);
    // purity cycle by cycle
    {
      std::vector<bool> seen(blk.orbit.size(), false);
      for (unsigned i = 0; i < blk.orbit.size(); ++i) {
        if (seen[i]) continue;
        CyclotomicInt prod = CyclotomicInt::one(m);
        unsigned len = 0, j = i;
        while (!seen[j]) {
          seen[j] = true;
          prod = prod * (blk.jacobi_value * blk.units[j]);
          j = blk.perm[j];
          ++len;
        }
        detail::check_purity(prod, q, n, len);
      }
    }
    factors.push_back(cp);
  }
  return detail::assemble(m, n, q, factors);
}

inline ZetaFunction zeta(const FormDatum& d, const Character& chi) {
  return zeta_with_iota(d, chi, calibrate_iota(chi));
}

// Zeta of the untwisted Fermat hypersurface for arbitrary q with char > m:
// A^m_n splits into <q>-orbits; the orbit of a contributes
// 1 - J_{F_q^e}(a/d) t^e with d = gcd(m, a), m' = m/d, e = ord of q mod m'.
inline ZetaFunction fermat_zeta_general_q(unsigned m, unsigned n, u64 q) {
  auto qfac = gf::factor_u64(q);
  if (qfac.size() != 1) throw DomainError("q must be a prime power");
  const u64 p = qfac.begin()->first;
  const unsigned j = qfac.begin()->second;
  if (p <= m) throw DomainError("requires char > m");

  std::vector<CharVector> chars = characters(m, n);
  std::map<std::vector<unsigned>, unsigned> pos;
  for (unsigned i = 0; i < chars.size(); ++i) pos[chars[i].a] = i;
  std::vector<bool> visited(chars.size(), false);

  std::vector<CycPolynomial> factors;
  for (unsigned i = 0; i < chars.size(); ++i) {
    if (visited[i]) continue;
    // <q>-orbit of chars[i]
    std::vector<std::vector<unsigned>> orbit;
    std::vector<unsigned> cur = chars[i].a;
    do {
      orbit.push_back(cur);
      visited[pos.at(cur)] = true;
      for (auto& e : cur) e = static_cast<unsigned>((static_cast<u64>(e) * q) % m);
    } while (cur != chars[i].a);
    const unsigned e = static_cast<unsigned>(orbit.size());

    unsigned d = m;
    for (unsigned v : chars[i].a) d = std::gcd(d, v);
    const unsigned mp = m / d;
    // e must be the order of q mod m'
    {
      u64 t = q % mp, ord = 1;
      while (t != 1 % mp) {
        t = (t * (q % mp)) % mp;
        ++ord;
      }
      if (ord != e) throw std::logic_error("orbit size does not match ord(q mod m')");
    }
    const Field* ext = gf::make_field(p, j * e);
    Character chip = Character::canonical(ext, mp);
    std::vector<unsigned> amin = orbit.front();
    for (const auto& member : orbit) amin = std::min(amin, member);
    CharVector aprime{mp, n, {}};
    for (unsigned v : amin) aprime.a.push_back(v / d);
    CyclotomicInt jac = jacobi(aprime, chip);
    detail::check_purity(jac.lift_to(m), ext->order(), n, 1);
    // each orbit contributes 1 - J t^e; lift J into Z[zeta_m]
    factors.push_back(CycPolynomial::one_minus_ut(jac.lift_to(m), e));
  }
  return detail::assemble(m, n, q, factors);
}

}  // namespace fermat::spectral

#endif  // FERMAT_SPECTRAL_HPP
