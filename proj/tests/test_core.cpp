#include "support.hpp"

#include "seqmod/domain.hpp"
#include "seqmod/errors.hpp"
#include "seqmod/formula.hpp"
#include "seqmod/instantiation.hpp"
#include "seqmod/rational.hpp"
#include "seqmod/term.hpp"

#include <doctest.h>

#include <set>

using namespace seqmod;
using namespace seqmod::testing;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("+5") == Rational(5));
  CHECK(parse_rational("0") == Rational(0));
  CHECK_FALSE(parse_rational(""));
  CHECK_FALSE(parse_rational("-"));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("1/"));
  CHECK_FALSE(parse_rational("/2"));
  CHECK_FALSE(parse_rational("1.5"));
  CHECK_FALSE(parse_rational("x"));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(46, 3)) == "46/3");
}

TEST_CASE("rational print and parse round-trip") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational r = random_rational(rng, 1000);
    auto back = parse_rational(to_string(r));
    REQUIRE(back);
    CHECK(*back == r);
  }
}

TEST_CASE("linear expressions cancel and substitute") {
  Var x = meta("X", Sort::Rational);
  Var y = meta("Y", Sort::Rational);
  LinearExpr e = lin(x) + lin(y, 2) + num(1);
  CHECK((e - lin(x)).coefficients().size() == 1);
  CHECK((e - e).is_constant());
  CHECK((e - e).constant() == 0);
  CHECK(e.coefficient(y) == 2);
  CHECK(e.coefficient(meta("Z", Sort::Rational)) == 0);
  // y := x - 1 gives 3x - 1
  LinearExpr s = e.substitute(y, lin(x) - num(1));
  CHECK(s == lin(x, 3) - num(1));
  CHECK((e * Rational(0)).is_constant());
  CHECK((-e).coefficient(x) == -1);
}

TEST_CASE("linear expressions evaluate like their coefficients") {
  Rng rng(11);
  std::vector<Var> vars{meta("A", Sort::Rational), meta("B", Sort::Rational), meta("C", Sort::Rational)};
  auto eval = [&](const LinearExpr& e, const std::map<Var, Rational>& v) {
    Rational r = e.constant();
    for (const auto& [var, k] : e.coefficients()) r += k * v.at(var);
    return r;
  };
  for (int i = 0; i < 300; ++i) {
    LinearExpr a(random_rational(rng));
    LinearExpr b(random_rational(rng));
    for (const auto& v : vars) {
      a = a + lin(v, random_rational(rng));
      b = b + lin(v, random_rational(rng));
    }
    std::map<Var, Rational> val;
    for (const auto& v : vars) val[v] = random_rational(rng);
    Rational k = random_rational(rng);
    CHECK(eval(a + b, val) == eval(a, val) + eval(b, val));
    CHECK(eval(a - b, val) == eval(a, val) - eval(b, val));
    CHECK(eval(a * k, val) == eval(a, val) * k);
    LinearExpr scaled = a * k;
    for (const auto& [var, coeff] : scaled.coefficients()) CHECK(coeff != 0);
  }
}

TEST_CASE("terms: depth, groundness and substitution") {
  Term t = f(g(c("a"), X("Y")));
  CHECK(c("a").depth() == 0);
  CHECK(t.depth() == 2);
  CHECK_FALSE(t.is_ground());
  CHECK(t.mentions(meta("Y")));
  Term s = t.substitute(meta("Y"), c("b"));
  CHECK(s.is_ground());
  CHECK(s.to_string() == "f(g(a, b))");
  CHECK(Term::eigen("e").is_ground());
}

TEST_CASE("signature rejects bad arity and sorts") {
  Signature sig = small_signature();
  CHECK_THROWS_AS(sig.make_app("f", {c("a"), c("b")}), DomainError);
  CHECK_THROWS_AS(sig.make_app("h", {}), DomainError);
  CHECK_THROWS_AS(Term::app("f", {Term::number(1)}), SortError);
  CHECK_NOTHROW(sig.make_app("g", {c("a"), c("b")}));
}

TEST_CASE("domain bookkeeping") {
  Domain d = Domain::initial({eigen("c0")});
  d = d.add_meta(meta("X1")).add_eigen(eigen("e")).add_meta(meta("X2"));
  CHECK(d.to_string() == "(c0, X1, e, X2)");
  CHECK(d.authorised_count("X1") == 1);
  CHECK(d.authorised_count("X2") == 2);
  CHECK(d.authorises("X2", eigen("e")));
  CHECK_FALSE(d.authorises("X1", eigen("e")));
  CHECK(d.visible_eigens() == 2);
  CHECK(d.last_meta().name == "X2");
  CHECK(d.without_last_meta().to_string() == "(c0, X1)");
  CHECK(d.add_eigen(eigen("k")).trimmed().to_string() == "(c0, X1, e, X2)");
  CHECK(d.meta_prefix(0).to_string() == "(c0)");
  CHECK_THROWS_AS(d.add_meta(meta("X1")), DomainError);
  CHECK_THROWS_AS(d.add_eigen(eigen("X1")), DomainError);
  CHECK_THROWS_AS(d.add_eigen(meta("Z")), DomainError);
  CHECK_THROWS_AS(Domain().without_last_meta(), DomainError);
}

TEST_CASE("instantiations respect authorisation") {
  Domain d = Domain::initial({eigen("c0")}).add_meta(meta("X1")).add_eigen(eigen("e")).add_meta(meta("X2"));
  Instantiation ok;
  ok.set("X1", f(Term::eigen("c0")));
  ok.set("X2", Term::eigen("e"));
  CHECK(ok.valid_for(d));
  Instantiation bad = ok.extended("X1", Term::eigen("e"));
  CHECK_FALSE(bad.valid_for(d));
  Instantiation partial;
  partial.set("X1", c("a"));
  CHECK_FALSE(partial.valid_for(d));
  CHECK(ok.restricted(d.without_last_meta()).size() == 1);
  Literal l = q(X("X1"), X("X2"));
  CHECK(ok.apply(l).to_string() == "q(f(c0), e)");
  CHECK_THROWS_AS(partial.apply(l), DomainError);
}

namespace {

/// Independent enumeration: closure of {a, b, eigens} under f and g up to depth.
std::set<std::string> closure(const std::vector<std::string>& base, std::size_t depth) {
  std::set<std::string> level(base.begin(), base.end());
  for (std::size_t i = 0; i < depth; ++i) {
    std::set<std::string> next = level;
    for (const auto& s : level) next.insert("f(" + s + ")");
    for (const auto& s : level) {
      for (const auto& t : level) next.insert("g(" + s + ", " + t + ")");
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

TEST_CASE("ground term enumeration matches the closure oracle") {
  Signature sig = small_signature();
  for (std::size_t depth = 0; depth <= 2; ++depth) {
    for (std::size_t ne = 0; ne <= 2; ++ne) {
      std::vector<Var> eigens;
      std::vector<std::string> base{"a", "b"};
      for (std::size_t i = 0; i < ne; ++i) {
        eigens.push_back(eigen("e" + std::to_string(i)));
        base.push_back("e" + std::to_string(i));
      }
      auto terms = enumerate_ground_terms(sig, eigens, Sort::Individual, depth, {});
      std::set<std::string> got;
      for (const auto& t : terms) {
        CHECK(t.depth() <= depth);
        got.insert(t.to_string());
      }
      CHECK(got.size() == terms.size());
      CHECK(got == closure(base, depth));
      // shallow terms come first
      for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i - 1].depth() <= terms[i].depth());
    }
  }
}

TEST_CASE("rational enumeration uses samples and rational eigenvariables") {
  Signature sig;
  std::vector<Var> eigens{eigen("r", Sort::Rational), eigen("i")};
  auto terms = enumerate_ground_terms(sig, eigens, Sort::Rational, 2, {Rational(0), Rational(1, 2)});
  REQUIRE(terms.size() == 3);
  CHECK(terms[2] == Term::variable(eigens[0]));
}

TEST_CASE("instantiation enumeration is the product over authorised terms") {
  Signature sig;
  sig.add_function("a", 0);
  sig.add_function("f", 1);
  Domain d = Domain::initial({}).add_meta(meta("X1")).add_eigen(eigen("e")).add_meta(meta("X2"));
  auto all = enumerate_instantiations(sig, d, 1, {});
  // X1 over {a, f(a)}, X2 over {a, e, f(a), f(e)}
  CHECK(all.size() == 2 * 4);
  std::set<Instantiation> unique(all.begin(), all.end());
  CHECK(unique.size() == all.size());
  for (const auto& rho : all) CHECK(rho.valid_for(d));
}

TEST_CASE("literals and formulas") {
  Literal l = p(X("X"));
  CHECK(l.negated().negated() == l);
  CHECK(l.negated() != l);
  Var x = Var::bound("x", Sort::Individual);
  Formula body = Formula::disj(Formula::lit(Literal::pred(true, "p", {Term::variable(x)})),
                               Formula::lit(Literal::pred(false, "p", {Term::variable(x)})));
  Formula ex = Formula::exists(x, body);
  std::set<Var> free;
  ex.collect_vars(free);
  CHECK(free.empty());
  Formula inst = ex.body().substitute(x, X("X1"));
  std::set<Var> inst_vars;
  inst.collect_vars(inst_vars);
  CHECK(inst_vars == std::set<Var>{meta("X1")});
  CHECK(ex.size() > body.size());
  Literal a = Literal::arith(lin(meta("X", Sort::Rational), 3), Relation::Le, lin(meta("Y", Sort::Rational), 2));
  CHECK(a.is_arith());
  CHECK(a.negated().negated() == a);
}
