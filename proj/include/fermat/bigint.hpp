// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_BIGINT_HPP
#define FERMAT_BIGINT_HPP

#include <cstdint>
#include <gmp.h>
#include <stdexcept>
#include <string>
#include <utility>

namespace fermat {

// Arbitrary-precision signed integer, value semantics over mpz_t.
// All zeta-numerator arithmetic is exact; coefficients grow like
// q^(deg*(n-2)/2), well past 64 bits.
class BigInt {
 public:
  BigInt() { mpz_init(z_); }
  BigInt(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
  explicit BigInt(const std::string& s) {
    if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
      mpz_clear(z_);
      throw std::invalid_argument("BigInt: bad decimal string '" + s + "'");
    }
  }
  BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  BigInt& operator=(const BigInt& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  BigInt& operator=(BigInt&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  static BigInt from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.z_, 1, 1, sizeof(v), 0, 0, &v);
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
  }
  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
  }
  BigInt operator-() const {
    BigInt r;
    mpz_neg(r.z_, z_);
    return r;
  }
  BigInt& operator+=(const BigInt& o) {
    mpz_add(z_, z_, o.z_);
    return *this;
  }
  BigInt& operator-=(const BigInt& o) {
    mpz_sub(z_, z_, o.z_);
    return *this;
  }
  BigInt& operator*=(const BigInt& o) {
    mpz_mul(z_, z_, o.z_);
    return *this;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

  bool is_zero() const { return mpz_sgn(z_) == 0; }
  int sign() const { return mpz_sgn(z_); }

  // Quotient for known-exact division; throws if the division has a remainder.
  BigInt divexact(const BigInt& d) const {
    if (d.is_zero()) throw std::domain_error("BigInt::divexact by zero");
    BigInt q, r;
    mpz_tdiv_qr(q.z_, r.z_, z_, d.z_);
    if (!r.is_zero()) throw std::domain_error("BigInt::divexact: not divisible");
    return q;
  }

  static BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.z_, base.z_, e);
    return r;
  }

  bool fits_i64() const { return mpz_fits_slong_p(z_) != 0; }
  std::int64_t to_i64() const {
    if (!fits_i64()) throw std::overflow_error("BigInt::to_i64: " + to_string());
    return mpz_get_si(z_);
  }

  std::string to_string() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
  }

 private:
  mpz_t z_;
};

inline std::string to_string(const BigInt& v) { return v.to_string(); }

}  // namespace fermat

#endif  // FERMAT_BIGINT_HPP
