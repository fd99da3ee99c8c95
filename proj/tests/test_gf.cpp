// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <random>

#include "fermat/gf.hpp"

using namespace fermat;
using gf::u64;

namespace {
const gf::Field* f7() { return gf::make_field(7, 1); }
const gf::Field* f49() { return gf::make_field(7, 2, std::vector<u64>{5, 5, 1}); }
const gf::Field* f2401() { return gf::make_field(7, 4, std::vector<u64>{5, 1, 4, 5, 1}); }
}  // namespace

TEST_CASE("make_field validates and interns") {
  CHECK(f7()->order() == 7);
  CHECK(f49()->order() == 49);
  CHECK(f2401()->order() == 2401);
  CHECK(f49() == gf::make_field(7, 2, std::vector<u64>{5, 5, 1}));  // interned
  CHECK(gf::make_field(7, 2) != f49());  // default modulus differs from the worked example's
  CHECK_THROWS_AS(gf::make_field(6, 1), DomainError);  // composite p
}

TEST_CASE("default modulus is deterministic and irreducible") {
  const gf::Field* a = gf::make_field(7, 2);
  const gf::Field* b = gf::make_field(7, 2);
  CHECK(a == b);
  // x^2+1 is irreducible over F_7 (since -1 is not a square mod 7), and it is
  // the smallest in the index encoding, so the default must be exactly it
  CHECK(a->modulus() == std::vector<u64>{1, 0, 1});
}

TEST_CASE("reducible modulus rejected") {
  // t^2 - 1 = (t-1)(t+1)
  CHECK_THROWS_AS(gf::make_field(7, 2, std::vector<u64>{6, 0, 1}), DomainError);
  // non-monic
  CHECK_THROWS_AS(gf::make_field(7, 2, std::vector<u64>{1, 0, 2}), DomainError);
}

TEST_CASE("named generators alpha and beta") {
  CHECK(f7()->index_of(f7()->generator()) == 3);  // chi(3) = zeta uses the smallest generator
  CHECK(f49()->is_generator(f49()->gen_root()));
  CHECK(f2401()->is_generator(f2401()->gen_root()));
}

TEST_CASE("dlog golden values") {
  CHECK(f7()->dlog(f7()->one(), f7()->generator()) == 0);
  CHECK(f7()->dlog(f7()->scalar(2), f7()->scalar(3)) == 2);  // 3^2 = 2 mod 7
  CHECK(f7()->dlog(f7()->scalar(4), f7()->scalar(5)) == 2);  // non-canonical base: 5^2 = 4
  gf::FieldElem alpha = f49()->gen_root();
  CHECK(f49()->dlog(f49()->pow(alpha, 17), alpha) == 17);
  CHECK_THROWS_AS(f7()->dlog(f7()->zero()), DomainError);
  CHECK_THROWS_AS(f7()->dlog(f7()->scalar(4), f7()->scalar(2)), DomainError);  // 2 not a generator
}

TEST_CASE("dlog round trip, exhaustive for small fields") {
  for (const gf::Field* f : {f7(), f49(), gf::make_field(13, 2), f2401()}) {
    const gf::FieldElem& g = f->generator();
    for (u64 i = 1; i < f->order(); ++i) {
      gf::FieldElem e = f->elem_of_index(i);
      CHECK(f->pow(g, f->dlog(e)) == e);
    }
  }
}

TEST_CASE("bsgs dlog beyond the table cap") {
  const gf::Field* big = gf::make_field(7, 8);  // 5,764,801 elements > 2^20
  const gf::FieldElem& g = big->generator();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    u64 d = rng() % (big->order() - 1);
    CHECK(big->dlog(big->pow(g, d)) == d);
  }
}

TEST_CASE("trace golden values") {
  CHECK(gf::trace_to_base(f49()->one(), f7()) == f7()->scalar(2));
  CHECK(gf::trace_to_base(f49()->gen_root(), f7()) == f7()->scalar(2));
  CHECK(gf::trace_to_base(f2401()->gen_root(), f7()) == f7()->scalar(2));
}

TEST_CASE("trace is linear and Frobenius-invariant") {
  std::mt19937_64 rng(11);
  const gf::Field* f = f2401();
  for (int i = 0; i < 50; ++i) {
    gf::FieldElem a = f->elem_of_index(rng() % f->order());
    gf::FieldElem b = f->elem_of_index(rng() % f->order());
    u64 c = rng() % 7;
    auto tr = [&](const gf::FieldElem& e) { return gf::trace_to_base(e, f7()); };
    CHECK(tr(f->add(a, b)) == f7()->add(tr(a), tr(b)));
    CHECK(tr(f->mul(f->scalar(c), a)) == f7()->mul(f7()->scalar(c), tr(a)));
    CHECK(tr(f->pow(a, 7)) == tr(a));
  }
}

TEST_CASE("mu_m_power golden values from the worked example") {
  gf::FieldElem beta = f2401()->gen_root();
  gf::FieldElem alpha = f49()->gen_root();
  auto m1 = gf::mu_m_power(f2401()->mul(beta, beta), 3, f7());
  CHECK(m1.value == f7()->scalar(2));
  // the same class as 1/beta: the value must agree
  auto m1b = gf::mu_m_power(f2401()->inv(beta), 3, f7());
  CHECK(m1b.value == m1.value);
  auto m2 = gf::mu_m_power(alpha, 3, f7());
  CHECK(m2.value == f7()->scalar(4));
  auto m2b = gf::mu_m_power(f49()->inv(f49()->mul(alpha, alpha)), 3, f7());
  CHECK(m2b.value == m2.value);
}

TEST_CASE("mu_m_power properties") {
  std::mt19937_64 rng(5);
  const gf::Field* f = f49();
  for (int i = 0; i < 100; ++i) {
    gf::FieldElem x = f->elem_of_index(1 + rng() % (f->order() - 1));
    if (x.is_zero()) continue;
    gf::FieldElem y = f->elem_of_index(1 + rng() % (f->order() - 1));
    if (y.is_zero()) continue;
    auto a = gf::mu_m_power(x, 3, f7());
    auto b = gf::mu_m_power(f->mul(x, f->pow(y, 3)), 3, f7());
    CHECK(a.value == b.value);  // well-defined modulo cubes
    CHECK(f7()->pow(a.value, 3) == f7()->one());
    gf::FieldElem cube = f->pow(x, 3);
    CHECK(gf::mu_m_power(cube, 3, f7()).value == f7()->one());
  }
  CHECK_THROWS_AS(gf::mu_m_power(f49()->zero(), 3, f7()), DomainError);
  CHECK_THROWS_AS(gf::mu_m_power(f49()->one(), 4, f7()), DomainError);  // 4 does not divide 6
}

TEST_CASE("subfield embeddings are ring maps and invert") {
  const gf::Embedding& emb = gf::get_embedding(f49(), gf::make_field(7, 4));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    gf::FieldElem a = f49()->elem_of_index(rng() % 49);
    gf::FieldElem b = f49()->elem_of_index(rng() % 49);
    CHECK(emb.apply(f49()->mul(a, b)) == emb.sup->mul(emb.apply(a), emb.apply(b)));
    CHECK(emb.apply(f49()->add(a, b)) == emb.sup->add(emb.apply(a), emb.apply(b)));
    CHECK(emb.down(emb.apply(a)) == a);
  }
  CHECK_THROWS_AS(gf::get_embedding(gf::make_field(7, 3), gf::make_field(7, 4)), DomainError);
}

TEST_CASE("character validation") {
  CHECK_THROWS_AS(gf::Character(f7(), f7()->scalar(2), 3), DomainError);  // 2 has order 3, not 6
  CHECK_THROWS_AS(gf::Character(f7(), f7()->scalar(3), 4), DomainError);  // 4 does not divide 6
  gf::Character chi = gf::Character::canonical(f7(), 3);
  CHECK(chi.exponent(f7()->scalar(3)) == 1);
  CHECK(chi.exponent(f7()->scalar(2)) == 2);
  CHECK(chi.exponent(f7()->one()) == 0);
}

TEST_CASE("u64 factoring") {
  auto f = gf::factor_u64(13841287200ull);  // 7^12 - 1
  u64 back = 1;
  for (auto [p, e] : f)
    for (unsigned i = 0; i < e; ++i) back *= p;
  CHECK(back == 13841287200ull);
  CHECK(gf::is_prime_u64(2305843009213693951ull));  // 2^61 - 1
  CHECK_FALSE(gf::is_prime_u64(3215031751ull));     // strong pseudoprime to 2,3,5,7
}
