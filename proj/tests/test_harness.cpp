#include "support.hpp"

#include "seqmod/harness/conformance.hpp"
#include "seqmod/harness/harness.hpp"
#include "seqmod/harness/mutants.hpp"

#include <doctest.h>

using namespace seqmod;
using namespace seqmod::testing;

namespace {

HarnessConfig quick(std::size_t cases) {
  HarnessConfig cfg;
  cfg.cases = cases;
  return cfg;
}

}  // namespace

TEST_CASE("oracle compatibles of an interval") {
  Var x = meta("X", Sort::Rational);
  Domain d = Domain::initial({}).add_meta(x);
  LraTheory lra{Signature{}};
  UniverseSpec spec{Signature{}, d, 2, {Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)}};
  OracleUniverse<LraTheory> u(lra, spec);
  PolyConstraint sigma{Dnf::of_systems({{LinAtom{-lin(x), Cmp::Le}, LinAtom{lin(x) - num(1), Cmp::Le}}})};
  auto got = oracle_compatibles(sigma, u, d);
  std::vector<Rational> values;
  for (const auto& rho : got) values.push_back(rho.get("X")->number());
  CHECK(values == std::vector<Rational>{0, Rational(1, 2), 1});
}

TEST_CASE("oracle compatibles of a substitution") {
  UniverseSpec spec = first_order_universe();
  FolTheory fol(spec.signature);
  OracleUniverse<FolTheory> u(fol, spec);
  Domain d = spec.domain.without_last_meta().without_last_meta();  // [c0; X1; e]
  REQUIRE(d.metas().size() == 1);
  const std::string x1 = d.metas()[0].var.name;
  auto sigma = mgu({{Term::variable(d.metas()[0].var), f(c("a"))}}, d);
  auto got = oracle_compatibles(sigma, u, d);
  REQUIRE(got.size() == 1);
  CHECK(*got[0].get(x1) == f(c("a")));
  CHECK(oracle_compatibles(SubstConstraint::bot(), u, d).empty());
  CHECK(oracle_compatibles(fol.top(d), u, d).size() == u.instantiations(d).size());
}

TEST_CASE("bit set helpers") {
  CHECK(subset({true, false}, {true, true}));
  CHECK_FALSE(subset({true, true}, {true, false}));
  CHECK(none({false, false}));
  CHECK_FALSE(none({false, true}));
}

TEST_CASE("shrink steps drop one piece at a time") {
  SubstConstraint s;
  s.bind.emplace("X", c("a"));
  s.bind.emplace("Y", c("b"));
  s.limit.emplace("Z", 0);
  CHECK(shrink_steps(s).size() == 3);
  CHECK(shrink_steps(SubstConstraint::bot()).empty());
  GroundConstraint g{{{"X", c("a")}}};
  auto gs = shrink_steps(g);
  REQUIRE(gs.size() == 1);
  CHECK(gs[0].assign.empty());
  Var x = meta("X", Sort::Rational);
  PolyConstraint p{Dnf::of_systems({{LinAtom{lin(x), Cmp::Le}}, {LinAtom{-lin(x) + num(1), Cmp::Lt}}})};
  CHECK(shrink_steps(p).size() == 4);
}

TEST_CASE("backends pass every axiom on a small run") {
  for (const auto& name : backend_names()) {
    ConformanceReport r = run_conformance(name, quick(25));
    CHECK_MESSAGE(r.passed(), r.text());
    CHECK(r.axioms.size() == all_axioms().size());
    for (const auto& a : r.axioms) CHECK(a.checks > 0);
  }
}

TEST_CASE("broken backends are caught with counterexamples") {
  for (const auto& name : {"fol-meet-drops-right", "enum-witness-default", "lra-lift-strengthens"}) {
    ConformanceReport r = run_conformance(name, quick(60));
    CHECK_MESSAGE(!r.passed(), name);
    for (const auto& a : r.axioms) {
      for (const auto& f : a.failures) CHECK(!f.empty());
    }
  }
}

TEST_CASE("mutant names filter by backend") {
  CHECK(mutant_names().size() == 6);
  CHECK(mutant_names("fol").size() == 3);
  CHECK(mutant_names("enum").size() == 1);
  CHECK(mutant_names("lra").size() == 2);
}

TEST_CASE("reports serialise") {
  ConformanceReport r = run_conformance("enum", quick(5));
  auto j = r.json();
  CHECK(j["backend"] == "enum");
  CHECK(j["axioms"].size() == all_axioms().size());
  CHECK(r.text().find("AX_proj") != std::string::npos);
}
