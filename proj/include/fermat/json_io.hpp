// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_JSON_IO_HPP
#define FERMAT_JSON_IO_HPP

#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "fermat/cyclo.hpp"
#include "fermat/descent.hpp"
#include "fermat/gf.hpp"
#include "fermat/oracle.hpp"
#include "fermat/spectral.hpp"

namespace fermat::io {

using nlohmann::json;

// BigInt values are emitted as JSON numbers while they fit an int64 and as
// decimal strings beyond, so output is always exact.
inline json bigint_to_json(const BigInt& v) {
  if (v.fits_i64()) return json(v.to_i64());
  return json(v.to_string());
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw DomainError("expected integer or decimal string");
}

// --- gf -----------------------------------------------------------------------

inline json field_to_json(const gf::Field* f) {
  return json{{"p", f->p()}, {"k", f->k()}, {"modulus", f->modulus()}};
}

inline const gf::Field* field_from_json(const json& j) {
  std::vector<gf::u64> mod = j.at("modulus").get<std::vector<gf::u64>>();
  return gf::make_field(j.at("p").get<gf::u64>(), j.at("k").get<unsigned>(), mod);
}

inline json elem_to_json(const gf::FieldElem& e) { return json(e.c); }

inline gf::FieldElem elem_from_json(const json& j, const gf::Field* f) {
  return f->from_coeffs(j.get<std::vector<gf::u64>>());
}

// --- cyclo ----------------------------------------------------------------------

inline json cyc_to_json(const cyclo::CyclotomicInt& v) {
  json coeffs = json::array();
  for (const auto& c : v.coeffs()) coeffs.push_back(bigint_to_json(c));
  return json{{"m", v.order()}, {"coeffs", coeffs}};
}

inline json cycpoly_to_json(const cyclo::CycPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(cyc_to_json(c));
  return out;
}

inline json intpoly_to_json(const cyclo::IntPoly& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(bigint_to_json(c));
  return out;
}

// --- descent ---------------------------------------------------------------------

inline json datum_to_json(const descent::FormDatum& d) {
  json factors = json::array();
  for (std::size_t i = 0; i < d.algebra.factors.size(); ++i) {
    const gf::Field* li = d.algebra.factors[i];
    json fj{{"degree", d.algebra.degree(i)}, {"x_dlog", li->dlog(d.x[i])}};
    const gf::Field* dflt = gf::make_field(li->p(), li->k());
    if (li != dflt) fj["modulus"] = li->modulus();
    factors.push_back(std::move(fj));
  }
  return json{{"m", d.m}, {"q", d.q()}, {"factors", factors}};
}

inline descent::FormDatum datum_from_json(const json& j) {
  unsigned m = j.at("m").get<unsigned>();
  gf::u64 q = j.at("q").get<gf::u64>();
  auto qfac = gf::factor_u64(q);
  if (qfac.size() != 1) throw DomainError("q must be a prime power");
  const gf::Field* base = gf::make_field(qfac.begin()->first, qfac.begin()->second);
  std::vector<const gf::Field*> factors;
  std::vector<gf::FieldElem> x;
  for (const auto& fj : j.at("factors")) {
    unsigned degree = fj.at("degree").get<unsigned>();
    const gf::Field* li =
        fj.contains("modulus")
            ? gf::make_field(base->p(), base->k() * degree,
                             fj.at("modulus").get<std::vector<gf::u64>>())
            : gf::make_field(base->p(), base->k() * degree);
    factors.push_back(li);
    gf::u64 d = fj.at("x_dlog").get<gf::u64>() % (li->order() - 1);
    x.push_back(li->pow(li->generator(), d));
  }
  return descent::FormDatum(m, gf::Algebra(base, factors), x);
}

inline json poly_to_json(const descent::HomogeneousPoly& p) {
  json terms = json::array();
  for (const auto& [exps, coeff] : p.terms()) {
    json t{{"exps", exps}};
    if (p.field()->k() == 1)
      t["coeff"] = coeff.c[0];
    else
      t["coeff"] = coeff.c;
    terms.push_back(std::move(t));
  }
  return json{{"field", field_to_json(p.field())},
              {"n", p.nvars()},
              {"m", p.degree()},
              {"terms", terms}};
}

inline descent::HomogeneousPoly poly_from_json(const json& j) {
  const gf::Field* f = field_from_json(j.at("field"));
  descent::HomogeneousPoly p(f, j.at("n").get<unsigned>(), j.at("m").get<unsigned>());
  for (const auto& t : j.at("terms")) {
    std::vector<unsigned> exps = t.at("exps").get<std::vector<unsigned>>();
    gf::FieldElem c = t.at("coeff").is_array()
                          ? f->from_coeffs(t.at("coeff").get<std::vector<gf::u64>>())
                          : f->scalar(t.at("coeff").get<gf::u64>());
    p.add_term(exps, c);
  }
  return p;
}

inline json wreath_to_json(const descent::WreathElement& w) {
  json zetas = json::array();
  for (const auto& v : w.zeta_values()) zetas.push_back(w.base->index_of(v));
  std::vector<unsigned> sigma1;  // 1-indexed images
  for (unsigned s : w.sigma) sigma1.push_back(s + 1);
  return json{{"m", w.m},
              {"zeta_values", zetas},
              {"zeta_exponents", w.zeta_exp},
              {"sigma", sigma1},
              {"display", w.to_string()}};
}

// --- spectral ----------------------------------------------------------------------

inline json zeta_to_json(const spectral::ZetaFunction& z, unsigned count_depth = 4) {
  json extra = json::array();
  BigInt qb = BigInt::from_u64(z.q);
  for (unsigned i = 0; i + 2 <= z.n; ++i) {
    json factor = json::array();
    factor.push_back(1);
    factor.push_back(bigint_to_json(-BigInt::pow(qb, i)));
    extra.push_back(std::move(factor));
  }
  json counts = json::array();
  for (const auto& c : z.counts(count_depth)) counts.push_back(bigint_to_json(c));
  json num = json::array({1});
  if (z.vprim_in_numerator) num = intpoly_to_json(z.vprim);
  return json{{"m", z.m},
              {"n", z.n},
              {"q", z.q},
              {"numerator", num},
              {"denominator_extra_factors", extra},
              {"vprim", intpoly_to_json(z.vprim)},
              {"vprim_in_numerator", z.vprim_in_numerator},
              {"point_counts", counts}};
}

// --- oracle -----------------------------------------------------------------------

inline std::uint64_t poly_hash(const descent::HomogeneousPoly& p) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(p.field()->p());
  mix(p.field()->k());
  mix(p.nvars());
  mix(p.degree());
  for (const auto& [exps, coeff] : p.terms()) {
    for (unsigned e : exps) mix(e);
    for (gf::u64 c : coeff.c) mix(c);
  }
  return h;
}

inline json count_report_to_json(const descent::HomogeneousPoly& p,
                                 const oracle::CountReport& r) {
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(poly_hash(p)));
  return json{{"poly_hash", std::string(hex)},
              {"field", field_to_json(r.field)},
              {"ext_degree", r.ext_degree},
              {"count", r.count},
              {"elapsed_seconds", r.elapsed_seconds}};
}

inline json verify_report_to_json(const oracle::VerifyReport& rep) {
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back(json{{"ext_degree", row.ext_degree},
                        {"predicted", bigint_to_json(row.predicted)},
                        {"counted", row.counted},
                        {"elapsed_seconds", row.elapsed_seconds},
                        {"ok", row.ok}});
  return json{{"rows", rows}, {"ok", rep.ok}};
}

}  // namespace fermat::io

#endif  // FERMAT_JSON_IO_HPP
