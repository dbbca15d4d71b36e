#include "seqmod/harness/conformance.hpp"

#include "seqmod/harness/mutants.hpp"

#include <chrono>
#include <sstream>

namespace seqmod {

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::Proj:
      return "AX_proj";
    case Axiom::Wit:
      return "AX_wit";
    case Axiom::Meet:
      return "AX_meet";
    case Axiom::Pg:
      return "AX_pg";
    case Axiom::Lift:
      return "AX_lift";
    case Axiom::P1:
      return "P1";
    case Axiom::P2:
      return "P2";
    case Axiom::A1:
      return "A1";
    case Axiom::A2:
      return "A2";
    case Axiom::D1:
      return "D1";
    case Axiom::D2:
      return "D2";
  }
  return "?";
}

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> all = {Axiom::Proj, Axiom::Wit, Axiom::Meet, Axiom::Pg, Axiom::Lift, Axiom::P1,
                                         Axiom::P2,   Axiom::A1,  Axiom::A2,   Axiom::D1, Axiom::D2};
  return all;
}

std::vector<SubstConstraint> shrink_steps(const SubstConstraint& c) {
  std::vector<SubstConstraint> out;
  if (c.bottom) return out;
  for (const auto& [k, v] : c.bind) {
    SubstConstraint s = c;
    s.bind.erase(k);
    out.push_back(std::move(s));
  }
  for (const auto& [k, v] : c.limit) {
    SubstConstraint s = c;
    s.limit.erase(k);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<GroundConstraint> shrink_steps(const GroundConstraint& c) {
  std::vector<GroundConstraint> out;
  for (const auto& [k, v] : c.assign) {
    GroundConstraint s = c;
    s.assign.erase(k);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PolyConstraint> shrink_steps(const PolyConstraint& c) {
  std::vector<PolyConstraint> out;
  const auto& ds = c.dnf.disjuncts();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.size() > 1) {
      std::vector<std::vector<LinAtom>> rest;
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (j != i) rest.push_back(ds[j]);
      }
      out.push_back(PolyConstraint{Dnf::of_systems(std::move(rest))});
    }
    for (std::size_t a = 0; a < ds[i].size(); ++a) {
      std::vector<std::vector<LinAtom>> systems(ds.begin(), ds.end());
      systems[i].erase(systems[i].begin() + static_cast<std::ptrdiff_t>(a));
      out.push_back(PolyConstraint{Dnf::of_systems(std::move(systems))});
    }
  }
  return out;
}

UniverseSpec first_order_universe() {
  UniverseSpec u;
  u.signature.add_function("a", 0);
  u.signature.add_function("f", 1);
  u.signature.add_predicate("p", {Sort::Individual});
  u.signature.add_predicate("q", {Sort::Individual, Sort::Individual});
  u.domain = Domain::initial({Var::eigen("c0", Sort::Individual)})
                 .add_meta(Var::meta("X1", Sort::Individual))
                 .add_eigen(Var::eigen("e", Sort::Individual))
                 .add_meta(Var::meta("X2", Sort::Individual))
                 .add_meta(Var::meta("X3", Sort::Individual));
  u.depth = 2;
  return u;
}

UniverseSpec rational_universe() {
  UniverseSpec u;
  u.signature.add_predicate("p", {Sort::Rational});
  u.signature.add_predicate("q", {Sort::Rational, Sort::Rational});
  u.domain = Domain::initial({Var::eigen("c0", Sort::Individual)})
                 .add_meta(Var::meta("X1", Sort::Rational))
                 .add_eigen(Var::eigen("e", Sort::Rational))
                 .add_meta(Var::meta("X2", Sort::Rational));
  u.depth = 2;
  return u;
}

namespace {

template <class T>
const T& choose(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::vector<Term> atoms_of_sort(const Domain& d, Sort sort) {
  std::vector<Term> out;
  for (const auto& e : d.eigens()) {
    if (e.sort == sort) out.push_back(Term::variable(e));
  }
  for (const auto& m : d.metas()) {
    if (m.var.sort == sort) {
      out.push_back(Term::variable(m.var));
      out.push_back(Term::variable(m.var));
    }
  }
  return out;
}

}  // namespace

LiteralGen first_order_literals() {
  return [](Rng& rng, const Domain& d) {
    std::vector<Term> base = atoms_of_sort(d, Sort::Individual);
    base.push_back(Term::app("a"));
    std::function<Term(int)> term = [&](int depth) {
      if (depth > 0 && coin(rng, 0.3)) return Term::app("f", {term(depth - 1)});
      return choose(rng, base);
    };
    auto literal = [&](bool positive, const std::string& sym) {
      if (sym == "p") return Literal::pred(positive, "p", {term(1)});
      return Literal::pred(positive, "q", {term(1), term(1)});
    };
    std::vector<Literal> lits;
    std::size_t n = 2 + std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    if (coin(rng, 0.75)) {
      std::string sym = coin(rng, 0.6) ? "p" : "q";
      lits.push_back(literal(true, sym));
      lits.push_back(literal(false, sym));
    }
    while (lits.size() < n) lits.push_back(literal(coin(rng, 0.5), coin(rng, 0.6) ? "p" : "q"));
    std::shuffle(lits.begin(), lits.end(), rng);
    return lits;
  };
}

LiteralGen rational_literals() {
  return [](Rng& rng, const Domain& d) {
    std::vector<Term> vars = atoms_of_sort(d, Sort::Rational);
    const std::vector<Rational> consts = {-1, 0, 1, 2, 15, 23};
    const std::vector<Rational> coeffs = {-2, -1, 1, 2, 3};
    auto simple = [&]() {
      if (vars.empty() || coin(rng, 0.25)) return Term::number(choose(rng, consts));
      return choose(rng, vars);
    };
    auto expr = [&]() {
      LinearExpr e;
      std::size_t k = vars.empty() ? 0 : 1 + (coin(rng, 0.4) ? 1 : 0);
      for (std::size_t i = 0; i < k; ++i) e = e + choose(rng, vars).as_linear() * choose(rng, coeffs);
      return e;
    };
    auto arith = [&]() {
      Relation rel = choose(rng, std::vector<Relation>{Relation::Le, Relation::Lt, Relation::Eq});
      return Literal::arith(expr(), rel, LinearExpr(choose(rng, consts)), !coin(rng, 0.15));
    };
    auto pred = [&](bool positive, bool unary) {
      if (unary) return Literal::pred(positive, "p", {simple()});
      return Literal::pred(positive, "q", {simple(), simple()});
    };
    std::vector<Literal> lits;
    std::size_t n = 2 + std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    if (coin(rng, 0.5)) {
      bool unary = coin(rng, 0.6);
      lits.push_back(pred(true, unary));
      lits.push_back(pred(false, unary));
    }
    while (lits.size() < n) lits.push_back(coin(rng, 0.6) ? arith() : pred(coin(rng, 0.5), coin(rng, 0.6)));
    std::shuffle(lits.begin(), lits.end(), rng);
    return lits;
  };
}

namespace {

template <TheoryBackend T>
ConformanceReport check_backend(const std::string& name, const T& theory, UniverseSpec spec, LiteralGen gen,
                                const HarnessConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  AxiomChecker<T> checker(theory, std::move(spec), std::move(gen), cfg);
  ConformanceReport report;
  report.backend = name;
  report.axioms = checker.check_all();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EnumConfig enum_config(const UniverseSpec& u) {
  EnumConfig cfg;
  cfg.ceiling = u.depth;
  cfg.samples = u.samples;
  return cfg;
}

LraConfig lra_config(const UniverseSpec& u) {
  LraConfig cfg;
  cfg.samples = u.samples;
  return cfg;
}

}  // namespace

std::vector<std::string> backend_names() { return {"fol", "enum", "lra"}; }

std::vector<std::string> mutant_names(const std::string& backend) {
  std::vector<std::string> all = {"fol-proj-wrong-entry", "fol-meet-drops-right",  "fol-stream-ignores-input",
                                  "enum-witness-default", "lra-proj-drops-atoms", "lra-lift-strengthens"};
  if (backend.empty()) return all;
  std::vector<std::string> out;
  for (const auto& m : all) {
    if (m.rfind(backend + "-", 0) == 0) out.push_back(m);
  }
  return out;
}

ConformanceReport run_conformance(const std::string& backend, const HarnessConfig& cfg) {
  UniverseSpec fo = first_order_universe();
  UniverseSpec rat = rational_universe();
  if (backend == "fol") return check_backend(backend, FolTheory(fo.signature), fo, first_order_literals(), cfg);
  if (backend == "enum") {
    return check_backend(backend, EnumTheory(fo.signature, enum_config(fo)), fo, first_order_literals(), cfg);
  }
  if (backend == "lra") return check_backend(backend, LraTheory(rat.signature, lra_config(rat)), rat, rational_literals(), cfg);
  if (backend == "fol-proj-wrong-entry") {
    return check_backend(backend, mutants::FolProjWrongEntry(fo.signature), fo, first_order_literals(), cfg);
  }
  if (backend == "fol-meet-drops-right") {
    return check_backend(backend, mutants::FolMeetDropsRight(fo.signature), fo, first_order_literals(), cfg);
  }
  if (backend == "fol-stream-ignores-input") {
    return check_backend(backend, mutants::FolStreamIgnoresInput(fo.signature), fo, first_order_literals(), cfg);
  }
  if (backend == "enum-witness-default") {
    return check_backend(backend, mutants::EnumWitnessDefault(fo.signature, enum_config(fo)), fo,
                         first_order_literals(), cfg);
  }
  if (backend == "lra-proj-drops-atoms") {
    return check_backend(backend, mutants::LraProjDropsAtoms(rat.signature, lra_config(rat)), rat,
                         rational_literals(), cfg);
  }
  if (backend == "lra-lift-strengthens") {
    return check_backend(backend, mutants::LraLiftStrengthens(rat.signature, lra_config(rat)), rat,
                         rational_literals(), cfg);
  }
  throw PreconditionError("unknown backend " + backend);
}

bool ConformanceReport::passed() const {
  for (const auto& a : axioms) {
    if (!a.passed()) return false;
  }
  return true;
}

std::vector<std::string> ConformanceReport::failed_axioms() const {
  std::vector<std::string> out;
  for (const auto& a : axioms) {
    if (!a.passed()) out.push_back(to_string(a.axiom));
  }
  return out;
}

nlohmann::ordered_json ConformanceReport::json() const {
  nlohmann::ordered_json j;
  j["backend"] = backend;
  j["passed"] = passed();
  j["axioms"] = nlohmann::ordered_json::array();
  for (const auto& a : axioms) {
    nlohmann::ordered_json x;
    x["axiom"] = to_string(a.axiom);
    x["passed"] = a.passed();
    x["cases"] = a.cases;
    x["checks"] = a.checks;
    x["skipped"] = a.skipped;
    x["vacuous"] = a.vacuous;
    x["truncated"] = a.truncated;
    x["failures"] = a.failures;
    x["caveats"] = a.caveats;
    j["axioms"].push_back(x);
  }
  return j;
}

std::string ConformanceReport::text() const {
  std::ostringstream out;
  out << backend << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& a : axioms) {
    out << "  " << to_string(a.axiom) << ": " << (a.passed() ? "pass" : "FAIL") << " (" << a.cases << " cases, "
        << a.checks << " checks)\n";
    for (const auto& f : a.failures) out << "    counterexample: " << f << "\n";
    for (const auto& c : a.caveats) out << "    caveat: " << c << "\n";
  }
  return out.str();
}

}  // namespace seqmod
