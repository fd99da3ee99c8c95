// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_CYCLO_HPP
#define FERMAT_CYCLO_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fermat/bigint.hpp"
#include "fermat/errors.hpp"

namespace fermat::cyclo {

namespace detail {

// Cyclotomic polynomial Phi_m, ascending integer coefficients, computed by
// exact division of x^m - 1 by the Phi_d for proper divisors d.
inline std::vector<long> compute_cyclotomic(unsigned m) {
  // numerator = x^m - 1
  std::vector<BigInt> num(m + 1, BigInt(0));
  num[0] = BigInt(-1);
  num[m] = BigInt(1);
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<long> phid = compute_cyclotomic(d);
    // exact long division by the monic phid
    std::vector<BigInt> quot(num.size() - phid.size() + 1, BigInt(0));
    std::vector<BigInt> rem = num;
    for (std::size_t i = quot.size(); i-- > 0;) {
      BigInt c = rem[i + phid.size() - 1];
      quot[i] = c;
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < phid.size(); ++j)
        rem[i + j] -= c * BigInt(phid[j]);
    }
    num = std::move(quot);
  }
  std::vector<long> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = num[i].to_i64();
  return out;
}

struct CycTables {
  std::vector<long> phi;                    // Phi_m, degree phi(m)
  unsigned deg;                             // phi(m)
  std::vector<std::vector<long>> zeta_pow;  // zeta^j mod Phi_m, j in [0, m)
};

inline const CycTables& tables(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, CycTables> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m == 0) throw DomainError("cyclotomic order must be positive");
  CycTables t;
  t.phi = compute_cyclotomic(m);
  t.deg = static_cast<unsigned>(t.phi.size() - 1);
  // zeta^j by repeated multiplication-by-x with reduction mod Phi_m
  std::vector<long> cur(t.deg, 0);
  if (t.deg > 0) cur[0] = 1;
  for (unsigned j = 0; j < m; ++j) {
    t.zeta_pow.push_back(cur);
    // cur <- x*cur mod Phi
    std::vector<long> nxt(t.deg, 0);
    long top = t.deg > 0 ? cur[t.deg - 1] : 0;
    for (unsigned i = t.deg; i-- > 1;) nxt[i] = cur[i - 1];
    if (top != 0)
      for (unsigned i = 0; i < t.deg; ++i) nxt[i] -= top * t.phi[i];
    cur = std::move(nxt);
  }
  return cache.emplace(m, std::move(t)).first->second;
}

}  // namespace detail

inline unsigned euler_phi_degree(unsigned m) { return detail::tables(m).deg; }

// Exact element of Z[zeta_m] in the power basis 1, zeta, ..., zeta^(phi(m)-1)
// modulo the m-th cyclotomic polynomial.  Always kept fully reduced, so
// equality is coefficient equality.
class CyclotomicInt {
 public:
  CyclotomicInt() : m_(1), c_(1, BigInt(0)) {}
  explicit CyclotomicInt(unsigned m) : m_(m), c_(euler_phi_degree(m), BigInt(0)) {}
  CyclotomicInt(unsigned m, std::vector<BigInt> coeffs) : m_(m), c_(std::move(coeffs)) {
    if (c_.size() != euler_phi_degree(m)) throw DomainError("CyclotomicInt: bad coefficient count");
  }

  static CyclotomicInt integer(unsigned m, BigInt v) {
    CyclotomicInt r(m);
    r.c_[0] = std::move(v);
    return r;
  }
  static CyclotomicInt one(unsigned m) { return integer(m, BigInt(1)); }

  // zeta_m^e, e taken mod m.
  static CyclotomicInt zeta_power(unsigned m, long e) {
    const auto& t = detail::tables(m);
    long r = e % static_cast<long>(m);
    if (r < 0) r += m;
    CyclotomicInt out(m);
    for (unsigned i = 0; i < t.deg; ++i) out.c_[i] = BigInt(t.zeta_pow[static_cast<unsigned>(r)][i]);
    return out;
  }

  unsigned order() const { return m_; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.check_same(b);
    CyclotomicInt r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.check_same(b);
    CyclotomicInt r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  CyclotomicInt operator-() const {
    CyclotomicInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.check_same(b);
    const auto& t = detail::tables(a.m_);
    const unsigned d = t.deg;
    if (d == 0) return CyclotomicInt(a.m_);
    std::vector<BigInt> prod(2 * d - 1, BigInt(0));
    for (unsigned i = 0; i < d; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (unsigned j = 0; j < d; ++j) {
        if (b.c_[j].is_zero()) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    // reduce mod the monic Phi_m
    for (unsigned i = 2 * d - 1; i-- > d;) {
      BigInt top = prod[i];
      if (top.is_zero()) continue;
      prod[i] = BigInt(0);
      for (unsigned j = 0; j < d; ++j) prod[i - d + j] -= top * BigInt(t.phi[j]);
    }
    prod.resize(d);
    return CyclotomicInt(a.m_, std::move(prod));
  }

  CyclotomicInt& operator+=(const CyclotomicInt& o) { return *this = *this + o; }
  CyclotomicInt& operator*=(const CyclotomicInt& o) { return *this = *this * o; }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  // Complex conjugation zeta -> zeta^(-1); a ring involution.
  CyclotomicInt conj() const {
    CyclotomicInt out(m_);
    for (unsigned i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      out += scaled_zeta_power(m_, c_[i], -static_cast<long>(i));
    }
    return out;
  }

  bool is_rational_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  // Constant coefficient; only meaningful together with is_rational_integer().
  const BigInt& rational_part() const { return c_[0]; }

  // Map into Z[zeta_M] for m | M via zeta_m -> zeta_M^(M/m).
  CyclotomicInt lift_to(unsigned M) const {
    if (M % m_ != 0) throw DomainError("CyclotomicInt::lift_to: order does not divide target");
    const long step = static_cast<long>(M / m_);
    CyclotomicInt out(M);
    for (unsigned i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      out += scaled_zeta_power(M, c_[i], step * static_cast<long>(i));
    }
    return out;
  }

  // Prints in the style "-56-21z" with z the primitive m-th root.
  std::string to_string() const {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      std::string coef = c_[i].to_string();
      if (!first && coef[0] != '-') out += "+";
      if (i == 0) {
        out += coef;
      } else {
        if (coef == "1")
          ;
        else if (coef == "-1")
          out += "-";
        else
          out += coef;
        out += "z";
        if (i > 1) out += "^" + std::to_string(i);
      }
      first = false;
    }
    if (first) out = "0";
    return out;
  }

 private:
  static CyclotomicInt scaled_zeta_power(unsigned m, const BigInt& s, long e) {
    CyclotomicInt z = zeta_power(m, e);
    for (auto& x : z.c_) x *= s;
    return z;
  }
  void check_same(const CyclotomicInt& o) const {
    if (m_ != o.m_) throw DomainError("CyclotomicInt: mismatched root-of-unity orders");
  }

  unsigned m_;
  std::vector<BigInt> c_;
};

// a * conj(a).  For Weil numbers of even weight (times a unit) the result is
// a rational integer; callers assert that.
inline CyclotomicInt cyc_abs_square(const CyclotomicInt& a) { return a * a.conj(); }

// Polynomial over Z[zeta_m] in t, ascending coefficients, trailing zeros
// trimmed.  Houses the per-orbit characteristic polynomial factors.
class CycPolynomial {
 public:
  explicit CycPolynomial(unsigned m) : m_(m), c_{CyclotomicInt::one(m)} { c_.clear(); }
  CycPolynomial(unsigned m, std::vector<CyclotomicInt> coeffs) : m_(m), c_(std::move(coeffs)) {
    trim();
  }

  static CycPolynomial one(unsigned m) { return constant(CyclotomicInt::one(m)); }
  static CycPolynomial constant(CyclotomicInt v) {
    CycPolynomial p(v.order());
    p.c_.push_back(std::move(v));
    p.trim();
    return p;
  }
  // 1 - u * t^k
  static CycPolynomial one_minus_ut(const CyclotomicInt& u, unsigned k) {
    std::vector<CyclotomicInt> c(k + 1, CyclotomicInt(u.order()));
    c[0] = CyclotomicInt::one(u.order());
    c[k] = -u;
    return CycPolynomial(u.order(), std::move(c));
  }

  unsigned order() const { return m_; }
  const std::vector<CyclotomicInt>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for the zero polynomial

  friend CycPolynomial operator*(const CycPolynomial& a, const CycPolynomial& b) {
    if (a.m_ != b.m_) throw DomainError("CycPolynomial: mismatched orders");
    if (a.c_.empty() || b.c_.empty()) return CycPolynomial(a.m_);
    std::vector<CyclotomicInt> prod(a.c_.size() + b.c_.size() - 1, CyclotomicInt(a.m_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return CycPolynomial(a.m_, std::move(prod));
  }

  friend bool operator==(const CycPolynomial& a, const CycPolynomial& b) {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  unsigned m_;
  std::vector<CyclotomicInt> c_;
};

// Product of factors sharing one m; the empty product is 1.
inline CycPolynomial cycpoly_product(unsigned m, const std::vector<CycPolynomial>& factors) {
  CycPolynomial acc = CycPolynomial::one(m);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

// Integer coefficient list of a polynomial whose coefficients must all be
// rational integers; anything else means an upstream Frobenius bug.
inline std::vector<BigInt> to_integer_poly(const CycPolynomial& p) {
  std::vector<BigInt> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational_integer())
      throw NonIntegralCoefficient("non-integral coefficient " + c.to_string() +
                                   " in characteristic polynomial");
    out.push_back(c.rational_part());
  }
  if (out.empty()) out.push_back(BigInt(0));
  return out;
}

// --- The ring Z[zeta_m][y]/Phi_p(y), i.e. Z[zeta_m] tensor Z[zeta_p] -------
//
// Gauss sums over a field of characteristic p live here (the additive
// character takes values in mu_p).  Products of Gauss sums attached to a
// character vector with zero sum land back in the constant Z[zeta_m] slice,
// which is how the fast Jacobi path extracts its value without ever
// representing zeta_{mp} in a power basis.
class CycTensor {
 public:
  CycTensor(unsigned m, unsigned p) : m_(m), p_(p), c_(p - 1, CyclotomicInt(m)) {
    if (p < 2) throw DomainError("CycTensor: p must be at least 2");
  }

  static CycTensor one(unsigned m, unsigned p) {
    CycTensor t(m, p);
    t.c_[0] = CyclotomicInt::one(m);
    return t;
  }

  // Add v * y^e (e mod p); y^(p-1) is rewritten via Phi_p.
  void add_scaled_ypower(const CyclotomicInt& v, unsigned long e) {
    e %= p_;
    if (e < p_ - 1) {
      c_[e] += v;
    } else {
      for (auto& slot : c_) slot = slot - v;
    }
  }

  friend CycTensor operator*(const CycTensor& a, const CycTensor& b) {
    if (a.m_ != b.m_ || a.p_ != b.p_) throw DomainError("CycTensor: mismatched rings");
    const unsigned d = a.p_ - 1;
    std::vector<CyclotomicInt> prod(2 * d - 1, CyclotomicInt(a.m_));
    for (unsigned i = 0; i < d; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (unsigned j = 0; j < d; ++j) {
        if (b.c_[j].is_zero()) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    CycTensor out(a.m_, a.p_);
    // reduce: y^(p-1) = -(1 + y + ... + y^(p-2)), applied top down
    for (unsigned i = 2 * d - 1; i-- > d;) {
      if (prod[i].is_zero()) continue;
      CyclotomicInt top = prod[i];
      prod[i] = CyclotomicInt(a.m_);
      for (unsigned j = 0; j < d; ++j) prod[i - d + j] = prod[i - d + j] - top;
    }
    for (unsigned i = 0; i < d; ++i) out.c_[i] = prod[i];
    return out;
  }

  bool is_constant() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  const CyclotomicInt& constant_part() const { return c_[0]; }

 private:
  unsigned m_, p_;
  std::vector<CyclotomicInt> c_;
};

// --- Plain integer polynomials (ascending coefficients) --------------------

using IntPoly = std::vector<BigInt>;

inline IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Power sums s_i = sum of i-th powers of the reciprocal roots of f, for
// f = 1 + c1 t + ... (constant term 1), via Newton's identities.  All
// integer arithmetic; this is what turns zeta factors into point counts.
inline std::vector<BigInt> reciprocal_root_power_sums(const IntPoly& f, unsigned count) {
  if (f.empty() || f[0] != BigInt(1))
    throw DomainError("power sums need a polynomial with constant term 1");
  std::vector<BigInt> s(count + 1, BigInt(0));
  for (unsigned i = 1; i <= count; ++i) {
    BigInt acc = (i < f.size()) ? BigInt(static_cast<long>(i)) * f[i] : BigInt(0);
    for (unsigned j = 1; j < i; ++j)
      if (j < f.size()) acc += f[j] * s[i - j];
    s[i] = -acc;
  }
  s.erase(s.begin());
  return s;
}

inline std::string intpoly_to_string(const IntPoly& f, const std::string& var = "t") {
  if (f.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    std::string coef = f[i].to_string();
    if (!first && coef[0] != '-') out += "+";
    if (i == 0) {
      out += coef;
    } else {
      if (coef == "1")
        ;
      else if (coef == "-1")
        out += "-";
      else
        out += coef;
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
    first = false;
  }
  if (first) out = "0";
  return out;
}

}  // namespace fermat::cyclo

#endif  // FERMAT_CYCLO_HPP
