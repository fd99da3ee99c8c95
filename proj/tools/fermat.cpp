// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: synthesize twisted forms, classify them, compute
// Jacobi sums and exact zeta functions, count points, and run the
// end-to-end verification.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "fermat/json_io.hpp"

using namespace fermat;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 2 usage, 3 bad arguments / preconditions, 4 budget,
// 5 verification mismatch, 6 internal invariant failure.
enum ExitCode { kOk = 0, kUsage = 2, kBadArgs = 3, kBudget = 4, kMismatch = 5, kInternal = 6 };

struct GlobalOpts {
  bool as_json = false;
  bool long_jobs = false;
  gf::u64 budget = oracle::kDefaultBudget;
  unsigned threads = std::thread::hardware_concurrency();
  std::string chi_generator;
  gf::u64 seed = 0;  // reproducibility hook for randomized jobs
};

// The worked example over F_7 uses named generators: alpha is a root of
// t^2+5t+5 generating F_49^x, beta a root of t^4+5t^3+4t^2+t+5 generating
// F_2401^x.  They are available whenever the requested factor matches.
const gf::Field* alpha_field() {
  return gf::make_field(7, 2, std::vector<gf::u64>{5, 5, 1});
}
const gf::Field* beta_field() {
  return gf::make_field(7, 4, std::vector<gf::u64>{5, 1, 4, 5, 1});
}

struct FactorSpec {
  const gf::Field* field;
  gf::FieldElem x;
};

// Element syntax: "1", "3", "g", "g^17", "alpha", "beta^-2", or a dlog via
// the JSON key x_dlog.  Named generators pin the factor field to the worked
// example's presentation.
FactorSpec parse_factor(const json& jf, gf::u64 q, unsigned m) {
  if (!gf::is_prime_u64(q)) throw DomainError("named datum syntax requires prime q");
  unsigned degree = jf.at("degree").get<unsigned>();
  const gf::Field* field = nullptr;
  if (jf.contains("modulus"))
    field = gf::make_field(q, degree, jf.at("modulus").get<std::vector<gf::u64>>());

  auto field_or_default = [&]() {
    return field ? field : gf::make_field(q, degree);
  };

  if (jf.contains("x_dlog")) {
    const gf::Field* f = field_or_default();
    gf::u64 d = jf.at("x_dlog").get<gf::u64>();
    return {f, f->pow(f->generator(), d % (f->order() - 1))};
  }
  std::string tok = jf.at("x").get<std::string>();
  std::string name = tok;
  long expo = 1;
  if (auto pos = tok.find('^'); pos != std::string::npos) {
    name = tok.substr(0, pos);
    expo = std::stol(tok.substr(pos + 1));
  }
  const gf::Field* f = nullptr;
  gf::FieldElem base_elem;
  if (name == "alpha" || name == "beta") {
    const gf::Field* pf = name == "alpha" ? alpha_field() : beta_field();
    if (q != 7 || degree != pf->k())
      throw DomainError("'" + name + "' names a generator of F_" + std::to_string(pf->order()) +
                        " over F_7; factor degree/q do not match");
    if (field && field != pf) throw DomainError("explicit modulus conflicts with named generator");
    f = pf;
    base_elem = f->gen_root();
  } else if (name == "g") {
    f = field_or_default();
    base_elem = f->generator();
  } else {
    f = field_or_default();
    char* end = nullptr;
    unsigned long v = std::strtoul(name.c_str(), &end, 10);
    if (end == nullptr || *end != '\0')
      throw DomainError("cannot parse element token '" + tok + "'");
    base_elem = f->scalar(v);
  }
  if (base_elem.is_zero()) throw DomainError("unit x must be nonzero");
  gf::u64 e = expo >= 0 ? static_cast<gf::u64>(expo) % (f->order() - 1)
                        : (f->order() - 1) - (static_cast<gf::u64>(-expo) % (f->order() - 1));
  (void)m;
  return {f, f->pow(base_elem, e)};
}

descent::FormDatum parse_datum(const std::string& text, unsigned m, gf::u64 q) {
  json j = json::parse(text);
  if (!j.is_array() || j.empty()) throw DomainError("datum must be a nonempty JSON array");
  const gf::Field* base = gf::make_field(q, 1);
  std::vector<const gf::Field*> factors;
  std::vector<gf::FieldElem> x;
  for (const auto& jf : j) {
    FactorSpec fs = parse_factor(jf, q, m);
    factors.push_back(fs.field);
    x.push_back(fs.x);
  }
  return descent::FormDatum(m, gf::Algebra(base, factors), x);
}

gf::Character make_chi(const gf::Field* base, unsigned m, const GlobalOpts& g) {
  if (g.chi_generator.empty()) return gf::Character::canonical(base, m);
  char* end = nullptr;
  unsigned long v = std::strtoul(g.chi_generator.c_str(), &end, 10);
  if (end == nullptr || *end != '\0') throw DomainError("--chi-generator must be a scalar");
  return gf::Character(base, base->scalar(v), m);
}

std::vector<std::string> block_variable_names(const descent::FormDatum& d) {
  // single letters a, b, c, ... per variable
  std::vector<std::string> names;
  for (unsigned i = 0; i < d.n() && i < 26; ++i) names.push_back(std::string(1, char('a' + i)));
  for (unsigned i = 26; i < d.n(); ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

void print_zeta_pretty(const spectral::ZetaFunction& z, unsigned depth) {
  std::string hyperplane;
  for (unsigned i = 0; i + 2 <= z.n; ++i) {
    if (i == 0)
      hyperplane += "(1-t)";
    else
      hyperplane += "(1-" + BigInt::pow(BigInt::from_u64(z.q), i).to_string() + "t)";
  }
  std::string prim = "[" + cyclo::intpoly_to_string(z.vprim) + "]";
  if (z.vprim_in_numerator)
    std::cout << "zeta(t) = " << prim << " / " << hyperplane << "\n";
  else
    std::cout << "zeta(t) = 1 / " << prim << hyperplane << "\n";
  auto counts = z.counts(depth);
  std::cout << "        = exp( ";
  for (unsigned i = 0; i < depth; ++i) {
    if (i) std::cout << " + ";
    std::cout << counts[i].to_string() << "/" << (i + 1) << "t";
    if (i) std::cout << "^" << (i + 1);
  }
  std::cout << " + ... )\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fermat: twisted forms of Fermat hypersurfaces over finite fields"};
  app.require_subcommand(1);
  GlobalOpts g;
  if (const char* env = std::getenv("FERMAT_BUDGET")) g.budget = std::strtoull(env, nullptr, 10);
  app.add_flag("--json", g.as_json, "machine-readable JSON output");
  app.add_flag("--long", g.long_jobs, "allow long-running jobs (raises the budget)");
  app.add_option("--budget", g.budget, "point-evaluation budget");
  app.add_option("--threads", g.threads, "worker threads for point counting");
  app.add_option("--chi-generator", g.chi_generator,
                 "generator of F_q^x pinning the character (default: smallest)");
  app.add_option("--seed", g.seed, "seed for randomized jobs (reproducibility contract)");

  unsigned m = 3, n = 0, depth = 4, ext = 1;
  gf::u64 q = 7;
  std::string datum_text, a_text, poly_text;

  auto* synth = app.add_subcommand("synth", "synthesize the trace form of a datum");
  synth->add_option("--m", m)->required();
  synth->add_option("--q", q)->required();
  synth->add_option("--datum", datum_text)->required();

  auto* classify = app.add_subcommand("classify", "enumerate all classes at (m, n, q)");
  classify->add_option("--m", m)->required();
  classify->add_option("--n", n)->required();
  classify->add_option("--q", q)->required();

  auto* jac = app.add_subcommand("jacobi", "Jacobi sum of a character vector");
  jac->add_option("--m", m)->required();
  jac->add_option("--q", q)->required();
  jac->add_option("--a", a_text, "comma-separated entries, e.g. 1,1,1,2,2,2")->required();

  auto* zetacmd = app.add_subcommand("zeta", "exact zeta function of a twisted form");
  zetacmd->add_option("--m", m)->required();
  zetacmd->add_option("--q", q)->required();
  zetacmd->add_option("--datum", datum_text)->required();
  zetacmd->add_option("--n", n, "expected variable count (cross-checked)");
  zetacmd->add_option("--counts", depth, "how many N_i to expand");

  auto* count = app.add_subcommand("count", "brute-force projective point count");
  count->add_option("--m", m);
  count->add_option("--q", q);
  count->add_option("--datum", datum_text, "count the datum's trace form");
  count->add_option("--poly", poly_text, "full polynomial JSON (as printed by synth --json)");
  count->add_option("--ext", ext, "extension degree i (counts over F_{q^i})");

  auto* verify = app.add_subcommand("verify", "zeta vs brute-force counts, depth k");
  verify->add_option("--m", m)->required();
  verify->add_option("--q", q)->required();
  verify->add_option("--datum", datum_text)->required();
  verify->add_option("--depth", depth, "check N_1..N_depth");

  auto* fz = app.add_subcommand("fermat-zeta", "untwisted Fermat zeta for arbitrary q");
  fz->add_option("--m", m)->required();
  fz->add_option("--n", n)->required();
  fz->add_option("--q", q)->required();
  fz->add_option("--counts", depth, "how many N_i to expand");

  // global flags remain valid after the subcommand name
  for (auto* sub : {synth, classify, jac, zetacmd, count, verify, fz}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (g.long_jobs && g.budget == oracle::kDefaultBudget) g.budget = 20'000'000'000ull;

  try {
    if (synth->parsed()) {
      descent::FormDatum d = parse_datum(datum_text, m, q);
      descent::HomogeneousPoly p = descent::trace_form(d);
      if (g.as_json)
        std::cout << io::poly_to_json(p).dump() << "\n";
      else
        std::cout << p.to_string(block_variable_names(d)) << " = 0\n";
    } else if (classify->parsed()) {
      auto classes = descent::enumerate_classes(m, n, q);
      if (g.as_json) {
        json out = json::array();
        for (const auto& c : classes) {
          json jc = io::datum_to_json(c);
          jc["aut_order"] = descent::aut_group_order(c);
          out.push_back(std::move(jc));
        }
        std::cout << json{{"m", m}, {"n", n}, {"q", q}, {"classes", out}}.dump() << "\n";
      } else {
        std::cout << classes.size() << " classes at (m=" << m << ", n=" << n << ", q=" << q
                  << ")\n";
        for (const auto& c : classes) {
          std::cout << "  degrees (";
          for (std::size_t i = 0; i < c.algebra.factors.size(); ++i)
            std::cout << (i ? "," : "") << c.algebra.degree(i);
          std::cout << ")  x_dlogs (";
          for (std::size_t i = 0; i < c.x.size(); ++i)
            std::cout << (i ? "," : "") << c.algebra.factors[i]->dlog(c.x[i]);
          std::cout << ")  |Aut| = " << descent::aut_group_order(c) << "\n";
        }
      }
    } else if (jac->parsed()) {
      const gf::Field* base = gf::make_field(q, 1);
      gf::Character chi = make_chi(base, m, g);
      spectral::CharVector a{m, 0, {}};
      for (std::size_t pos = 0; pos < a_text.size();) {
        auto comma = a_text.find(',', pos);
        if (comma == std::string::npos) comma = a_text.size();
        a.a.push_back(static_cast<unsigned>(std::stoul(a_text.substr(pos, comma - pos))));
        pos = comma + 1;
      }
      a.n = static_cast<unsigned>(a.a.size());
      cyclo::CyclotomicInt v = spectral::jacobi(a, chi);
      if (g.as_json)
        std::cout << io::cyc_to_json(v).dump() << "\n";
      else
        std::cout << v.to_string() << "\n";
    } else if (zetacmd->parsed()) {
      descent::FormDatum d = parse_datum(datum_text, m, q);
      if (n && d.n() != n) throw DomainError("--n does not match the datum's variable count");
      gf::Character chi = make_chi(d.algebra.base, m, g);
      spectral::ZetaFunction z = spectral::zeta(d, chi);
      if (g.as_json)
        std::cout << io::zeta_to_json(z, depth).dump() << "\n";
      else
        print_zeta_pretty(z, depth);
    } else if (count->parsed()) {
      descent::HomogeneousPoly p = [&] {
        if (!poly_text.empty()) return io::poly_from_json(json::parse(poly_text));
        if (datum_text.empty()) throw DomainError("count needs --datum or --poly");
        return descent::trace_form(parse_datum(datum_text, m, q));
      }();
      oracle::CountReport r = oracle::count_points(p, ext, g.budget, g.threads);
      if (g.as_json)
        std::cout << io::count_report_to_json(p, r).dump() << "\n";
      else
        std::cout << "#X(F_" << r.field->order() << ") = " << r.count << "  ["
                  << r.elapsed_seconds << " s]\n";
    } else if (verify->parsed()) {
      descent::FormDatum d = parse_datum(datum_text, m, q);
      oracle::VerifyReport rep = oracle::verify(d, depth, g.budget, g.threads);
      if (g.as_json)
        std::cout << io::verify_report_to_json(rep).dump() << "\n";
      else
        for (const auto& row : rep.rows)
          std::cout << "i=" << row.ext_degree << "  zeta: " << row.predicted.to_string()
                    << "  brute: " << row.counted << "  " << (row.ok ? "ok" : "MISMATCH") << "\n";
      if (!rep.ok) return kMismatch;
    } else if (fz->parsed()) {
      spectral::ZetaFunction z = spectral::fermat_zeta_general_q(m, n, q);
      if (g.as_json)
        std::cout << io::zeta_to_json(z, depth).dump() << "\n";
      else
        print_zeta_pretty(z, depth);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const NonIntegralCoefficient& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  }
  return kOk;
}
