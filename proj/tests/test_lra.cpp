#include "lra_oracle.hpp"
#include "support.hpp"

#include "seqmod/errors.hpp"
#include "seqmod/linear_system.hpp"
#include "seqmod/lra.hpp"

#include <doctest.h>

using namespace seqmod;
using namespace seqmod::testing;

namespace {

Var rat(const std::string& name) { return meta(name, Sort::Rational); }

bool equivalent(const Dnf& a, const Dnf& b) {
  return valid(disjoin(negate(a), b)) && valid(disjoin(negate(b), a));
}

LinAtom le(const LinearExpr& a, const LinearExpr& b) { return {a - b, Cmp::Le}; }
LinAtom lt(const LinearExpr& a, const LinearExpr& b) { return {a - b, Cmp::Lt}; }
LinAtom eq(const LinearExpr& a, const LinearExpr& b) { return {a - b, Cmp::Eq}; }

struct Example {
  Var x = rat("X"), y = rat("Y"), x2 = rat("X2"), y2 = rat("Y2");
  System s1{eq(lin(x), lin(x2)), eq(lin(y), lin(y2))};
  System s2{le(lin(x, 3), lin(y, 2)), le(lin(y, 2), lin(x, 3) + num(1))};
  System s3{le(num(99), lin(x2, 2) + lin(y2, 3)), le(lin(x2, 2) + lin(y2, 3), num(101))};
  Dnf all() const { return conjoin(conjoin(Dnf::of_systems({s1}), Dnf::of_systems({s2})), Dnf::of_systems({s3})); }
  std::map<Var, Rational> solution() const { return {{x, 15}, {y, 23}, {x2, 15}, {y2, 23}}; }
};

Signature rational_p() {
  Signature sig;
  sig.add_predicate("p", {Sort::Rational, Sort::Rational});
  sig.add_predicate("r", {Sort::Rational});
  return sig;
}

}  // namespace

TEST_CASE("atom normalisation keeps the solution set") {
  Rng rng(21);
  std::vector<Var> vars{rat("A"), rat("B")};
  for (int i = 0; i < 300; ++i) {
    LinAtom a = random_atom(rng, vars);
    LinAtom n = normalise_atom(a);
    for (const auto& v : grid_points(vars, sample_grid())) CHECK(evaluate(a, v) == evaluate(n, v));
  }
  CHECK(constant_truth(LinAtom{num(1), Cmp::Le}) == false);
  CHECK(constant_truth(LinAtom{num(0), Cmp::Le}) == true);
  CHECK(constant_truth(LinAtom{num(0), Cmp::Lt}) == false);
  CHECK_FALSE(constant_truth(LinAtom{lin(rat("A")), Cmp::Eq}));
}

TEST_CASE("fourier-motzkin examples") {
  Var z = eigen("z", Sort::Rational), y = eigen("y", Sort::Rational), x = rat("X");
  auto r = fm_eliminate(System{le(lin(z), lin(x)), le(lin(x), lin(y))}, x);
  REQUIRE(r);
  CHECK(equivalent(Dnf::of_systems({*r}), Dnf::of_systems({{le(lin(z), lin(y))}})));

  Dnf empty = fm_eliminate(Dnf::of_systems({{le(lin(x), num(0)), le(num(1), lin(x))}}), x);
  CHECK(empty.is_false());

  auto strict = fm_eliminate(System{lt(lin(z), lin(x)), le(lin(x), lin(y))}, x);
  REQUIRE(strict);
  CHECK(equivalent(Dnf::of_systems({*strict}), Dnf::of_systems({{lt(lin(z), lin(y))}})));

  Example ex;
  Dnf f = exists(ex.all(), {ex.x, ex.y, ex.x2, ex.y2});
  CHECK(f.is_true());
}

TEST_CASE("example constraints are satisfied by the integer solution") {
  Example ex;
  CHECK(lra_sat(ex.all()));
  CHECK(evaluate(ex.all(), ex.solution()));
  auto off = ex.solution();
  off[ex.y] = 24;
  off[ex.y2] = 24;
  CHECK_FALSE(evaluate(ex.all(), off));
}

TEST_CASE("satisfiability examples") {
  Var x = rat("X");
  CHECK_FALSE(lra_sat(Dnf::of_systems({{le(lin(x), num(0)), le(num(1), lin(x))}})));
  CHECK(lra_sat(Dnf::truth()));
  CHECK_FALSE(lra_sat(Dnf::falsity()));
  CHECK_FALSE(lra_sat(Dnf::of_systems({{lt(lin(x), num(0)), lt(num(0), lin(x))}})));
  CHECK(lra_sat(Dnf::of_systems({{le(lin(x), num(0)), le(num(0), lin(x))}})));
}

TEST_CASE("lra_sat agrees with the plane oracle") {
  Rng rng(23);
  Var x = rat("X"), y = rat("Y");
  PlaneOracle oracle(x, y);
  std::size_t sat = 0;
  for (int i = 0; i < 300; ++i) {
    System s = random_system(rng, {x, y}, 5);
    bool expected = oracle.sat(s);
    sat += expected;
    CHECK(lra_sat(Dnf::of_systems({s})) == expected);
    if (grid_sat(s, x, y, sample_grid())) CHECK(expected);
  }
  CHECK(sat > 30);
  CHECK(sat < 270);
}

TEST_CASE("elimination round trip on random systems") {
  Rng rng(29);
  std::vector<Var> all{rat("V0"), rat("V1"), rat("V2"), rat("V3")};
  for (int i = 0; i < 150; ++i) {
    std::size_t n = 1 + pick(rng, 4);
    std::vector<Var> vars(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    System s = random_system(rng, vars, 6);
    auto failure = fm_round_trip(s, vars);
    CHECK_MESSAGE(!failure, failure.value_or(""));
  }
}

TEST_CASE("negation, universal closure and validity") {
  Var x = rat("X");
  Dnf pos = Dnf::of_systems({{le(num(0), lin(x))}});
  Dnf neg = negate(pos);
  CHECK(valid(disjoin(pos, neg)));
  CHECK_FALSE(lra_sat(conjoin(pos, neg)));
  Var e = eigen("e", Sort::Rational);
  // forall e. (e <= X or X < e) is valid; forall e. e <= X is false
  CHECK(forall(Dnf::of_systems({{le(lin(e), lin(x))}, {lt(lin(x), lin(e))}}), {e}).is_true());
  CHECK(forall(Dnf::of_systems({{le(lin(e), lin(x))}}), {e}).is_false());
}

TEST_CASE("disjunct cap is a resource error") {
  LraLimits tiny;
  tiny.max_disjuncts = 4;
  std::vector<System> systems;
  for (int i = 0; i < 6; ++i) systems.push_back({le(lin(rat("X")), num(i))});
  CHECK_THROWS_AS(Dnf::of_systems(systems, tiny), ResourceError);
}

TEST_CASE("witness picks a point in the feasible interval") {
  LraTheory lra(rational_p());
  Var x = rat("X"), y = rat("Y");
  Domain d = Domain::initial({}).add_meta(y).add_meta(x);
  PolyConstraint s{Dnf::of_systems({{le(lin(x, 3), lin(y, 2)), le(lin(y, 2), lin(x, 3) + num(1))}})};
  Instantiation rho;
  rho.set("Y", Q(23));
  CHECK(lra.witness(s, d, rho) == Q(Rational(91, 6)));
  PolyConstraint point{Dnf::of_systems({{eq(lin(x), num(7))}})};
  CHECK(lra.witness(point, d, rho) == Q(7));
  CHECK(lra.witness(PolyConstraint{}, d, rho) == Q(0));
  PolyConstraint half{Dnf::of_systems({{lt(num(5), lin(x))}})};
  CHECK(lra.witness(half, d, rho).number() > 5);
  PolyConstraint none{Dnf::of_systems({{lt(lin(x), lin(y)), lt(lin(y), lin(x))}})};
  CHECK_THROWS_AS(lra.witness(none, d, rho), PreconditionError);
}

TEST_CASE("witness over an eigenvariable bound") {
  LraTheory lra(rational_p());
  Var e = eigen("e", Sort::Rational), x = rat("X");
  Domain d = Domain::initial({}).add_eigen(e).add_meta(x);
  PolyConstraint s{Dnf::of_systems({{lt(lin(e), lin(x))}})};
  Term w = lra.witness(s, d, Instantiation{});
  Instantiation rho;
  rho.set("X", w);
  CHECK(lra.compatible(rho, s, d));
}

TEST_CASE("consistency stream examples") {
  LraTheory lra(rational_p());
  Example ex;
  Domain d = Domain::initial({}).add_meta(ex.x).add_meta(ex.y).add_meta(ex.x2).add_meta(ex.y2);
  auto tx = Term::variable(ex.x), ty = Term::variable(ex.y), tx2 = Term::variable(ex.x2), ty2 = Term::variable(ex.y2);
  Literal pxy = Literal::pred(true, "p", {tx, ty});
  Literal npx2y2 = Literal::pred(false, "p", {tx2, ty2});

  auto s = lra.consistency({pxy, npx2y2}, d);
  auto y1 = s.pull(lra.top(d));
  REQUIRE(y1);
  CHECK(equivalent(y1->out.dnf, Dnf::of_systems({ex.s1})));
  CHECK(y1->used.size() == 2);
  CHECK_FALSE(s.pull(lra.top(d)));

  Literal l1 = Literal::arith(lin(ex.x, 3), Relation::Le, lin(ex.y, 2));
  auto s2 = lra.consistency({l1, npx2y2}, d);
  auto y2 = s2.pull(PolyConstraint{Dnf::of_systems({ex.s1})});
  REQUIRE(y2);
  CHECK(equivalent(y2->out.dnf, Dnf::of_systems({{ex.s1[0], ex.s1[1], ex.s2[0]}})));
  CHECK(y2->used == std::vector<Literal>{l1});

  auto s3 = lra.consistency({Literal::pred(true, "r", {tx})}, d);
  CHECK_FALSE(s3.pull(lra.top(d)));
}

TEST_CASE("stream filters unsatisfiable closers") {
  LraTheory lra(rational_p());
  Var x = rat("X");
  Domain d = Domain::initial({}).add_meta(x);
  Literal a = Literal::arith(lin(x), Relation::Lt, num(0));
  Literal b = Literal::arith(num(5), Relation::Le, lin(x));
  auto s = lra.consistency({a, b}, d);
  PolyConstraint positive{Dnf::of_systems({{lt(num(1), lin(x))}})};
  auto y = s.pull(positive);
  REQUIRE(y);
  CHECK(y->used == std::vector<Literal>{b});
  auto combined = s.pull(positive);
  REQUIRE(combined);
  CHECK(combined->used == std::vector<Literal>{a, b});
  CHECK_FALSE(s.pull(positive));
}

TEST_CASE("ground validity evaluates arithmetic") {
  LraTheory lra(rational_p());
  CHECK(lra.ground_valid({Literal::arith(num(45), Relation::Le, num(46)), Literal::arith(num(46), Relation::Le, num(46))}));
  CHECK_FALSE(lra.ground_valid({Literal::arith(num(47), Relation::Le, num(46))}));
  Literal pa = Literal::pred(true, "p", {Q(1), Q(2)});
  CHECK(lra.ground_valid({pa, pa.negated()}));
  CHECK_FALSE(lra.ground_valid({pa, Literal::pred(false, "p", {Q(1), Q(3)})}));
  CHECK_THROWS_AS(lra.ground_valid({Literal::pred(true, "r", {Term::meta("X", Sort::Rational)})}), PreconditionError);
}

TEST_CASE("meet is conjunction and rejects unsatisfiable results") {
  LraTheory lra(rational_p());
  Var x = rat("X");
  Domain d = Domain::initial({}).add_meta(x);
  PolyConstraint a{Dnf::of_systems({{le(lin(x), num(1))}, {le(num(3), lin(x))}})};
  PolyConstraint b{Dnf::of_systems({{le(num(2), lin(x))}})};
  auto m = lra.meet(a, b, d);
  REQUIRE(m);
  CHECK(equivalent(m->dnf, Dnf::of_systems({{le(num(3), lin(x))}})));
  PolyConstraint c{Dnf::of_systems({{lt(lin(x), num(0))}})};
  CHECK_FALSE(lra.meet(b, c, d));
}
