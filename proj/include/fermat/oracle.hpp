// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_ORACLE_HPP
#define FERMAT_ORACLE_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fermat/descent.hpp"
#include "fermat/errors.hpp"
#include "fermat/gf.hpp"
#include "fermat/spectral.hpp"

namespace fermat::oracle {

using descent::FormDatum;
using descent::HomogeneousPoly;
using gf::Field;
using gf::FieldElem;
using gf::u64;

// An inconsistent zeta function: its log expansion fails to produce
// nonnegative integer point counts.
struct InconsistentZeta : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr u64 kDefaultBudget = 500'000'000;  // point evaluations

struct CountReport {
  const Field* field = nullptr;  // the extension actually enumerated
  unsigned ext_degree = 1;
  u64 count = 0;
  double elapsed_seconds = 0.0;
};

namespace detail {

// Dense-table evaluator over a small field: elements are indices, products
// come from a Q x Q table, powers from a Q x (m+1) table.
struct PackedTables {
  u64 q = 0;
  unsigned m = 0;
  std::vector<std::uint16_t> mul;  // q*q
  std::vector<std::uint16_t> pow;  // q*(m+1)
  std::vector<std::uint16_t> add;  // q*q

  static constexpr u64 kMaxTabledField = 4096;

  PackedTables(const Field* f, unsigned degree) : q(f->order()), m(degree) {
    mul.resize(q * q);
    add.resize(q * q);
    for (u64 i = 0; i < q; ++i) {
      FieldElem a = f->elem_of_index(i);
      for (u64 j = 0; j <= i; ++j) {
        FieldElem b = f->elem_of_index(j);
        std::uint16_t p = static_cast<std::uint16_t>(f->index_of(f->mul(a, b)));
        std::uint16_t s = static_cast<std::uint16_t>(f->index_of(f->add(a, b)));
        mul[i * q + j] = mul[j * q + i] = p;
        add[i * q + j] = add[j * q + i] = s;
      }
    }
    pow.resize(q * (m + 1));
    for (u64 i = 0; i < q; ++i) {
      pow[i * (m + 1)] = 1;  // index of one
      for (unsigned e = 1; e <= m; ++e) pow[i * (m + 1) + e] = mul[pow[i * (m + 1) + e - 1] * q + i];
    }
    // index 1 must be the multiplicative identity for pow[.][0] above
    // (elem_of_index(1) is the constant 1 by construction)
  }
};

inline const PackedTables& packed_tables(const Field* f, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, unsigned>, std::unique_ptr<PackedTables>> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_pair(f, degree);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<PackedTables>(f, degree)).first;
  return *it->second;
}

struct PackedTerm {
  std::uint16_t coeff;
  std::vector<std::pair<unsigned, unsigned>> exps;  // (variable, exponent), ordered
};

// Count zeros of the polynomial on one chart (coordinates before `chart`
// zero, coordinate `chart` equal to one) over the index range
// [begin, end) of the free-coordinate odometer.
inline u64 count_chart_range(const PackedTables& t, const std::vector<PackedTerm>& terms,
                             unsigned nfree, u64 begin, u64 end) {
  const u64 q = t.q;
  const unsigned m = t.m;
  if (nfree == 0) {
    // single point (0,...,0,1): value = sum of coefficients of terms with
    // no free-variable exponents
    std::uint16_t acc = 0;
    for (const auto& term : terms) {
      bool constant = term.exps.empty();
      if (constant) acc = t.add[acc * q + term.coeff];
    }
    return begin == 0 && acc == 0 ? 1 : 0;
  }

  // terms grouped by the exponent of the innermost variable (index nfree-1)
  std::vector<u64> pt(nfree, 0);
  u64 code = begin;
  for (unsigned i = 0; i < nfree; ++i) {
    pt[i] = code % q;
    code /= q;
  }
  // iterate codes by incrementing the innermost coordinate fastest
  u64 done = begin;
  u64 zeros = 0;
  std::vector<std::uint16_t> inner_acc(m + 1);
  while (done < end) {
    // chunk: full inner sweep unless clipped by begin/end
    u64 inner_start = pt[0];
    u64 chunk = std::min(q - inner_start, end - done);
    // partial products over outer variables, bucketed by inner exponent
    std::fill(inner_acc.begin(), inner_acc.end(), 0);
    for (const auto& term : terms) {
      std::uint16_t v = term.coeff;
      unsigned inner_exp = 0;
      for (const auto& [var, e] : term.exps) {
        if (var == 0) {  // variable 0 is the innermost sweep coordinate
          inner_exp = e;
        } else {
          v = t.mul[v * q + t.pow[pt[var] * (m + 1) + e]];
        }
      }
      inner_acc[inner_exp] = t.add[inner_acc[inner_exp] * q + v];
    }
    for (u64 x = inner_start; x < inner_start + chunk; ++x) {
      std::uint16_t val = 0;
      for (unsigned e = 0; e <= m; ++e) {
        if (!inner_acc[e]) continue;
        val = t.add[val * q + t.mul[inner_acc[e] * q + t.pow[x * (m + 1) + e]]];
      }
      if (val == 0) ++zeros;
    }
    done += chunk;
    // advance the odometer past the swept chunk
    pt[0] = 0;
    unsigned i = 1;
    while (i < nfree && pt[i] == q - 1) pt[i++] = 0;
    if (i < nfree) ++pt[i];
  }
  return zeros;
}

}  // namespace detail

// Exact number of projective zeros of a homogeneous polynomial over
// F_{q^ext_degree}, by exhaustive chart enumeration.  Deterministic for any
// shard count; parallelized over ranges of the outer coordinates.
inline CountReport count_points(const HomogeneousPoly& poly, unsigned ext_degree,
                                u64 budget = kDefaultBudget,
                                unsigned threads = std::thread::hardware_concurrency()) {
  auto t0 = std::chrono::steady_clock::now();
  const Field* base = poly.field();
  const Field* ext = ext_degree == 1
                         ? base
                         : gf::make_field(base->p(), base->k() * ext_degree);
  const u64 q = ext->order();
  const unsigned n = poly.nvars();

  // work estimate: number of projective points
  long double estimate = 0;
  for (unsigned c = 0; c < n; ++c) {
    long double pts = 1;
    for (unsigned i = c + 1; i < n; ++i) pts *= static_cast<long double>(q);
    estimate += pts;
  }
  if (estimate > static_cast<long double>(budget))
    throw BudgetExceeded("point count needs about " + std::to_string(double(estimate)) +
                         " evaluations; budget is " + std::to_string(budget));
  if (q > detail::PackedTables::kMaxTabledField)
    throw BudgetExceeded("field too large for the tabled point counter");

  const detail::PackedTables& tables = detail::packed_tables(ext, poly.degree());
  const gf::Embedding* emb = (ext == base) ? nullptr : &gf::get_embedding(base, ext);

  u64 total = 0;
  for (unsigned chart = 0; chart < n; ++chart) {
    // drop terms using zeroed coordinates; renumber free vars so that
    // (chart+1 .. n-1) -> (nfree-1 .. 0), making the innermost loop the
    // last coordinate
    const unsigned nfree = n - 1 - chart;
    std::vector<detail::PackedTerm> terms;
    for (const auto& [exps, coeff] : poly.terms()) {
      bool dead = false;
      for (unsigned i = 0; i < chart; ++i)
        if (exps[i]) {
          dead = true;
          break;
        }
      if (dead) continue;
      detail::PackedTerm term;
      FieldElem c_ext = emb ? emb->apply(coeff) : coeff;
      term.coeff = static_cast<std::uint16_t>(ext->index_of(c_ext));
      for (unsigned i = chart + 1; i < n; ++i)
        if (exps[i]) term.exps.emplace_back(n - 1 - i, exps[i]);
      terms.push_back(std::move(term));
    }
    u64 chart_points = 1;
    for (unsigned i = 0; i < nfree; ++i) chart_points *= q;

    unsigned nthreads = std::max(1u, threads);
    if (chart_points < 4096 || nthreads == 1) {
      total += detail::count_chart_range(tables, terms, nfree, 0, chart_points);
    } else {
      std::vector<u64> partial(nthreads, 0);
      std::vector<std::thread> pool;
      u64 step = (chart_points + nthreads - 1) / nthreads;
      for (unsigned t = 0; t < nthreads; ++t) {
        u64 lo = t * step, hi = std::min(chart_points, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&, t, lo, hi] {
          partial[t] = detail::count_chart_range(tables, terms, nfree, lo, hi);
        });
      }
      for (auto& th : pool) th.join();
      for (u64 v : partial) total += v;
    }
  }

  CountReport rep;
  rep.field = ext;
  rep.ext_degree = ext_degree;
  rep.count = total;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Log-expansion of a zeta function into N_1..N_k, insisting the result is a
// sequence of nonnegative integers.
inline std::vector<BigInt> zeta_to_counts(const spectral::ZetaFunction& z, unsigned k) {
  if (k < 1) throw DomainError("zeta_to_counts: k must be positive");
  std::vector<BigInt> out = z.counts(k);
  for (unsigned i = 0; i < k; ++i)
    if (out[i].sign() < 0)
      throw InconsistentZeta("negative point count N_" + std::to_string(i + 1) + " = " +
                             out[i].to_string());
  return out;
}

// End-to-end consistency: zeta via Jacobi sums against brute-force counts of
// the trace form over F_{q^i}, i = 1..depth.
struct VerifyRow {
  unsigned ext_degree;
  BigInt predicted;
  u64 counted;
  double elapsed_seconds;
  bool ok;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool ok = true;
};

inline VerifyReport verify(const FormDatum& d, unsigned depth, u64 budget = kDefaultBudget,
                           unsigned threads = std::thread::hardware_concurrency()) {
  gf::Character chi = gf::Character::canonical(d.algebra.base, d.m);
  spectral::ZetaFunction z = spectral::zeta(d, chi);
  std::vector<BigInt> predicted = zeta_to_counts(z, depth);
  HomogeneousPoly form = descent::trace_form(d);
  VerifyReport rep;
  for (unsigned i = 1; i <= depth; ++i) {
    CountReport c = count_points(form, i, budget, threads);
    VerifyRow row{i, predicted[i - 1], c.count, c.elapsed_seconds,
                  predicted[i - 1] == BigInt::from_u64(c.count)};
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace fermat::oracle

#endif  // FERMAT_ORACLE_HPP
