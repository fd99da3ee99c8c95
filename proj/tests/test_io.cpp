// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <atomic>
#include <thread>

#include "fermat/json_io.hpp"
#include "test_support.hpp"

using namespace fermat;
using nlohmann::json;

TEST_CASE("field JSON round trip") {
  const gf::Field* f = testsupport::alpha_field();
  json j = io::field_to_json(f);
  CHECK(j.dump() == R"({"k":2,"modulus":[5,5,1],"p":7})");
  CHECK(io::field_from_json(j) == f);  // interning makes the round trip pointer-exact
}

TEST_CASE("cyclotomic JSON format") {
  std::vector<BigInt> c{BigInt(-56), BigInt(-21)};
  cyclo::CyclotomicInt v(3, c);
  CHECK(io::cyc_to_json(v).dump() == R"({"coeffs":[-56,-21],"m":3})");
}

TEST_CASE("bigint JSON switches to strings beyond int64") {
  CHECK(io::bigint_to_json(BigInt(42)).is_number_integer());
  BigInt big = BigInt::pow(BigInt(7), 54);
  json j = io::bigint_to_json(big);
  CHECK(j.is_string());
  CHECK(io::bigint_from_json(j) == big);
  CHECK(io::bigint_from_json(io::bigint_to_json(BigInt(-17))) == BigInt(-17));
}

TEST_CASE("datum JSON round trip preserves the class and the representative") {
  descent::FormDatum d = testsupport::worked_example_datum();
  json j = io::datum_to_json(d);
  CHECK(j.at("m") == 3);
  CHECK(j.at("q") == 7);
  CHECK(j.at("factors").size() == 2);
  CHECK(j.at("factors")[0].at("degree") == 4);
  CHECK(j.at("factors")[0].contains("modulus"));  // non-default presentation carried along
  descent::FormDatum back = io::datum_from_json(j);
  CHECK(back.m == d.m);
  CHECK(back.algebra.factors == d.algebra.factors);
  CHECK(back.x == d.x);
}

TEST_CASE("polynomial JSON round trip") {
  descent::HomogeneousPoly p = testsupport::worked_example_form();
  json j = io::poly_to_json(p);
  descent::HomogeneousPoly back = io::poly_from_json(j);
  CHECK(back == p);
  CHECK(j.at("terms").size() == 23);
}

TEST_CASE("zeta JSON carries exact factors and counts") {
  gf::Character chi = gf::Character::canonical(gf::make_field(7, 1), 3);
  spectral::ZetaFunction z = spectral::zeta(testsupport::worked_example_datum(), chi);
  json j = io::zeta_to_json(z, 4);
  CHECK(j.at("point_counts")[0] == 2710);
  CHECK(j.at("point_counts")[3] == 33246893493864ll);
  CHECK(j.at("denominator_extra_factors").size() == 5);  // i = 0..4
  CHECK(j.at("vprim_in_numerator") == false);
  CHECK(j.at("numerator").dump() == "[1]");
}

TEST_CASE("count report JSON") {
  descent::HomogeneousPoly p = testsupport::worked_example_form();
  oracle::CountReport r = oracle::count_points(p, 1);
  json j = io::count_report_to_json(p, r);
  CHECK(j.at("count") == 2710);
  CHECK(j.at("ext_degree") == 1);
  CHECK(j.at("poly_hash").get<std::string>().size() == 16);
}

TEST_CASE("lazy field caches are safe under concurrent first use") {
  // a field not touched by any other test, so the caches are cold
  const gf::Field* f = gf::make_field(101, 2);
  std::atomic<int> mismatches{0};
  auto worker = [&] {
    for (gf::u64 i = 1; i < 400; ++i) {
      gf::FieldElem e = f->elem_of_index(i);
      if (f->pow(f->generator(), f->dlog(e)) != e) ++mismatches;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  CHECK(mismatches == 0);
}
