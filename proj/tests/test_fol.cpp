#include "support.hpp"

#include "seqmod/errors.hpp"
#include "seqmod/fol.hpp"

#include <doctest.h>

using namespace seqmod;
using namespace seqmod::testing;

namespace {

Domain three_metas() {
  return Domain::initial({}).add_meta(meta("X1")).add_eigen(eigen("e")).add_meta(meta("X2")).add_meta(meta("X3"));
}

bool unifies(const Instantiation& rho, const std::vector<std::pair<Term, Term>>& pairs) {
  for (const auto& [s, t] : pairs) {
    if (rho.apply(s) != rho.apply(t)) return false;
  }
  return true;
}

std::vector<std::pair<Term, Term>> random_pairs(Rng& rng) {
  std::vector<Term> leaves{X("X1"), X("X2"), X("X3"), Term::eigen("e")};
  std::vector<std::pair<Term, Term>> pairs;
  std::size_t n = 1 + pick(rng, 2);
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(random_term(rng, leaves, 2), random_term(rng, leaves, 2));
  return pairs;
}

struct Universe {
  Signature sig = small_signature();
  Domain d = three_metas();
  std::vector<Instantiation> all = enumerate_instantiations(sig, d, 1, {});
};

const Universe& universe() {
  static const Universe u;
  return u;
}

}  // namespace

TEST_CASE("mgu examples") {
  Domain d = Domain::initial({}).add_meta(meta("X")).add_meta(meta("Y"));
  auto s = mgu({{X("X"), f(X("Y"))}, {f(c("a")), f(X("Y"))}}, d);
  REQUIRE_FALSE(s.bottom);
  CHECK(apply(s, X("X")) == f(c("a")));
  CHECK(apply(s, X("Y")) == c("a"));

  CHECK(mgu({{X("X"), f(X("X"))}}, d).bottom);
  CHECK(mgu({{c("a"), c("b")}}, d).bottom);
  CHECK(mgu({{g(X("X"), c("a")), g(c("b"), X("Y"))}}, d).bind.size() == 2);
}

TEST_CASE("mgu enforces eigenvariable dependencies") {
  Domain d = Domain::initial({}).add_meta(meta("X")).add_eigen(eigen("y")).add_meta(meta("Z"));
  CHECK(mgu({{X("X"), Term::eigen("y")}}, d).bottom);
  CHECK_FALSE(mgu({{X("Z"), Term::eigen("y")}}, d).bottom);
  // Z may only take y as long as X does not absorb it
  CHECK(mgu({{X("Z"), Term::eigen("y")}, {X("X"), f(X("Z"))}}, d).bottom);
  CHECK(mgu({{X("X"), X("Z")}, {X("Z"), Term::eigen("y")}}, d).bottom);
  CHECK_FALSE(mgu({{X("X"), X("Z")}, {X("Z"), c("a")}}, d).bottom);
}

TEST_CASE("mgu is sound, most general and idempotent on random pairs") {
  const auto& u = universe();
  Rng rng(3);
  std::size_t unifiable = 0;
  for (int i = 0; i < 150; ++i) {
    auto pairs = random_pairs(rng);
    auto sigma = mgu(pairs, u.d);
    if (!sigma.bottom) {
      ++unifiable;
      for (const auto& [s, t] : pairs) CHECK(apply(sigma, s) == apply(sigma, t));
      for (const auto& [name, range] : sigma.bind) CHECK(apply(sigma, range) == range);
    }
    for (const auto& rho : u.all) {
      bool oracle = unifies(rho, pairs);
      if (sigma.bottom) {
        CHECK_FALSE(oracle);
      } else {
        CHECK(FolTheory(u.sig).compatible(rho, sigma, u.d) == oracle);
      }
    }
  }
  CHECK(unifiable > 20);
}

TEST_CASE("meet examples") {
  FolTheory fol(small_signature());
  Domain d = Domain::initial({}).add_meta(meta("X")).add_meta(meta("Y"));
  auto xa = mgu({{X("X"), c("a")}}, d);
  auto xb = mgu({{X("X"), c("b")}}, d);
  auto xfy = mgu({{X("X"), f(X("Y"))}}, d);
  auto ya = mgu({{X("Y"), c("a")}}, d);
  CHECK(fol.meet(fol.top(d), xa, d) == xa);
  CHECK_FALSE(fol.meet(xa, xb, d));
  auto m = fol.meet(xfy, ya, d);
  REQUIRE(m);
  CHECK(apply(*m, X("X")) == f(c("a")));
  CHECK(apply(*m, X("Y")) == c("a"));
  CHECK_FALSE(fol.meet(SubstConstraint::bot(), xa, d));
}

TEST_CASE("meet is conjunction on the bounded universe") {
  const auto& u = universe();
  FolTheory fol(u.sig);
  Rng rng(5);
  for (int i = 0; i < 120; ++i) {
    auto a = mgu(random_pairs(rng), u.d);
    auto b = mgu(random_pairs(rng), u.d);
    auto m = fol.meet(a, b, u.d);
    for (const auto& rho : u.all) {
      bool both = fol.compatible(rho, a, u.d) && fol.compatible(rho, b, u.d);
      CHECK((m && fol.compatible(rho, *m, u.d)) == both);
    }
  }
}

TEST_CASE("projection is sound and witnessed") {
  const auto& u = universe();
  FolTheory fol(u.sig);
  Domain outer = u.d.without_last_meta();
  auto outer_all = enumerate_instantiations(u.sig, outer, 1, {});
  auto x3_terms = enumerate_ground_terms(u.sig, u.d, meta("X3"), 1, {});
  Rng rng(9);
  for (int i = 0; i < 120; ++i) {
    auto sigma = mgu(random_pairs(rng), u.d);
    if (sigma.bottom) continue;
    auto proj = fol.project(sigma, u.d);
    for (const auto& rho : outer_all) {
      bool some = false;
      for (const auto& t : x3_terms) some = some || fol.compatible(rho.extended("X3", t), sigma, u.d);
      bool in_proj = fol.compatible(rho, proj, outer);
      if (some) CHECK(in_proj);
      if (in_proj) {
        Term w = fol.witness(sigma, u.d, rho);
        CHECK(fol.compatible(rho.extended("X3", w), sigma, u.d));
      }
    }
  }
}

TEST_CASE("lift keeps compatibility") {
  const auto& u = universe();
  FolTheory fol(u.sig);
  Domain outer = u.d.without_last_meta();
  auto outer_all = enumerate_instantiations(u.sig, outer, 1, {});
  Rng rng(13);
  for (int i = 0; i < 60; ++i) {
    auto sigma = mgu(random_pairs(rng), outer.add_meta(meta("X3")));
    if (sigma.bottom) continue;
    auto proj = fol.project(sigma, u.d);
    auto lifted = fol.lift(proj, u.d);
    for (const auto& rho : outer_all) {
      if (!fol.compatible(rho, proj, outer)) continue;
      CHECK(fol.compatible(rho.extended("X3", c("a")), lifted, u.d));
    }
  }
}

TEST_CASE("consistency stream examples") {
  FolTheory fol(small_signature());
  Domain d = Domain::initial({}).add_meta(meta("X"));
  Literal qq = Literal::pred(true, "q", {});

  auto s1 = fol.consistency({p(X("X")), p(c("a"), false), qq}, d);
  auto first = s1.pull(fol.top(d));
  REQUIRE(first);
  CHECK(apply(first->out, X("X")) == c("a"));
  CHECK(first->used == std::vector<Literal>{p(X("X")), p(c("a"), false)});
  CHECK_FALSE(s1.pull(fol.top(d)));

  auto s2 = fol.consistency({p(X("X")), p(c("a"), false), p(c("b"), false)}, d);
  auto y1 = s2.pull(fol.top(d));
  auto y2 = s2.pull(fol.top(d));
  REQUIRE(y1);
  REQUIRE(y2);
  CHECK(apply(y1->out, X("X")) == c("a"));
  CHECK(apply(y2->out, X("X")) == c("b"));
  CHECK_FALSE(s2.pull(fol.top(d)));

  auto s3 = fol.consistency({p(c("a")), p(c("b"), false)}, d);
  CHECK_FALSE(s3.pull(fol.top(d)));
}

TEST_CASE("consistency stream refines its input") {
  FolTheory fol(small_signature());
  Domain d = Domain::initial({}).add_meta(meta("X"));
  auto xb = mgu({{X("X"), c("b")}}, d);
  auto s = fol.consistency({p(X("X")), p(c("a"), false), p(c("b"), false)}, d);
  auto y = s.pull(xb);
  REQUIRE(y);
  CHECK(apply(y->out, X("X")) == c("b"));
  CHECK_FALSE(s.pull(xb));
}

TEST_CASE("ground validity is the complementary pair test") {
  FolTheory fol(small_signature());
  CHECK(fol.ground_valid({p(c("a")), q(c("a"), c("b")), p(c("a"), false)}));
  CHECK_FALSE(fol.ground_valid({p(c("a")), p(c("b"), false)}));
  CHECK_FALSE(fol.ground_valid({}));
}

TEST_CASE("witness of an unconstrained meta is an authorised ground term") {
  FolTheory fol(small_signature());
  Domain d = Domain::initial({eigen("c0")}).add_meta(meta("X")).add_eigen(eigen("e")).add_meta(meta("Y"));
  Instantiation rho;
  rho.set("X", Term::eigen("c0"));
  Term w = fol.witness(fol.top(d), d, rho);
  CHECK(w.is_ground());
  CHECK(rho.extended("Y", w).valid_for(d));
}

TEST_CASE("meta names starting with an underscore are reserved") {
  Domain d = Domain::initial({}).add_meta(meta("_bad"));
  CHECK_THROWS_AS(normalise(mgu({{X("_bad"), c("a")}}, d), d), DomainError);
}
