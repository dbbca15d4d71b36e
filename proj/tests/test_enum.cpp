#include "support.hpp"

#include "seqmod/fol.hpp"
#include "seqmod/ground_enum.hpp"

#include <doctest.h>

#include <set>

using namespace seqmod;
using namespace seqmod::testing;

namespace {

Signature af() {
  Signature sig;
  sig.add_function("a", 0);
  sig.add_function("f", 1);
  sig.add_predicate("p", {Sort::Individual});
  sig.add_predicate("q", {Sort::Individual, Sort::Individual});
  return sig;
}

EnumTheory with_ceiling(std::size_t ceiling, Signature sig = af()) {
  EnumConfig cfg;
  cfg.ceiling = ceiling;
  return EnumTheory(std::move(sig), cfg);
}

std::vector<GroundConstraint> drain(EnumTheory::Stream s, const GroundConstraint& input) {
  std::vector<GroundConstraint> out;
  while (auto y = s.pull(input)) out.push_back(y->out);
  return out;
}

}  // namespace

TEST_CASE("enumeration stream examples") {
  EnumTheory en = with_ceiling(2);
  Domain d = Domain::initial({}).add_meta(meta("X"));
  auto ys = drain(en.consistency({p(X("X")), p(c("a"), false)}, d), {});
  REQUIRE(ys.size() == 1);
  CHECK(ys[0].assign.at("X") == c("a"));

  auto ground = en.consistency({p(c("a")), p(c("a"), false)}, d);
  auto y = ground.pull({});
  REQUIRE(y);
  CHECK(y->out.assign.empty());

  CHECK(drain(en.consistency({p(c("a"))}, d), {}).empty());
}

TEST_CASE("enumeration respects the depth ceiling") {
  Domain d = Domain::initial({}).add_meta(meta("X"));
  std::vector<Literal> lits{p(X("X")), p(f(f(c("a"))), false)};
  CHECK(drain(with_ceiling(1).consistency(lits, d), {}).empty());
  auto ys = drain(with_ceiling(2).consistency(lits, d), {});
  REQUIRE(ys.size() == 1);
  CHECK(ys[0].assign.at("X") == f(f(c("a"))));
}

TEST_CASE("enumeration extends its input") {
  EnumTheory en = with_ceiling(2);
  Domain d = Domain::initial({}).add_meta(meta("X")).add_meta(meta("Y"));
  GroundConstraint in;
  in.assign.emplace("X", f(c("a")));
  auto ys = drain(en.consistency({q(X("X"), X("Y")), q(f(c("a")), c("a"), false), q(c("a"), c("a"), false)}, d), in);
  REQUIRE(ys.size() == 1);
  CHECK(ys[0].assign.at("X") == f(c("a")));
  CHECK(ys[0].assign.at("Y") == c("a"));
}

TEST_CASE("enumeration is fair: shallower total depth first") {
  EnumTheory en = with_ceiling(2);
  Domain d = Domain::initial({}).add_meta(meta("X")).add_meta(meta("Y"));
  // every assignment closes via the ground pair, so the stream is the full product
  auto ys = drain(en.consistency({q(X("X"), X("Y")), p(c("a")), p(c("a"), false)}, d), {});
  REQUIRE(ys.size() == 9);
  std::size_t last = 0;
  for (const auto& y : ys) {
    std::size_t total = y.assign.at("X").depth() + y.assign.at("Y").depth();
    CHECK(total >= last);
    last = total;
  }
}

TEST_CASE("enumeration yields exactly the valid groundings") {
  Signature sig = af();
  EnumTheory en = with_ceiling(2, sig);
  Domain d = Domain::initial({eigen("e")}).add_meta(meta("X")).add_meta(meta("Y"));
  std::vector<Term> leaves{X("X"), X("Y"), Term::eigen("e")};
  auto terms = enumerate_ground_terms(sig, d, meta("X"), 2, {});
  Rng rng(17);
  auto lit = [&](bool pos) {
    auto t = [&] {
      Term s = leaves[pick(rng, leaves.size())];
      return pick(rng, 2) ? s : f(s);
    };
    return pick(rng, 2) ? p(t(), pos) : q(t(), t(), pos);
  };
  for (int i = 0; i < 80; ++i) {
    std::vector<Literal> lits{lit(true), lit(false), lit(pick(rng, 2) == 0)};
    std::set<Var> vars;
    for (const auto& l : lits) l.collect_vars(vars);
    std::set<std::map<std::string, Term>> oracle;
    for (const auto& tx : terms) {
      for (const auto& ty : terms) {
        std::map<std::string, Term> a;
        if (vars.count(meta("X"))) a.emplace("X", tx);
        if (vars.count(meta("Y"))) a.emplace("Y", ty);
        Instantiation rho;
        rho.set("X", tx);
        rho.set("Y", ty);
        if (complementary_pair(rho.apply(lits))) oracle.insert(a);
      }
    }
    std::set<std::map<std::string, Term>> got;
    for (const auto& y : drain(en.consistency(lits, d), {})) {
      CHECK(got.insert(y.assign).second);
    }
    CHECK(got == oracle);
  }
}

TEST_CASE("ground meet") {
  EnumTheory en = with_ceiling(2);
  Domain d = Domain::initial({}).add_meta(meta("X")).add_meta(meta("Y"));
  GroundConstraint xa{{{"X", c("a")}}};
  GroundConstraint yb{{{"Y", f(c("a"))}}};
  GroundConstraint xf{{{"X", f(c("a"))}}};
  auto m = en.meet(xa, yb, d);
  REQUIRE(m);
  CHECK(m->assign.size() == 2);
  CHECK_FALSE(en.meet(xa, xf, d));
  CHECK(en.meet(xa, xa, d) == xa);
}

TEST_CASE("ground compatibility and projection") {
  EnumTheory en = with_ceiling(2);
  Domain d = Domain::initial({}).add_meta(meta("X")).add_meta(meta("Y"));
  GroundConstraint s{{{"X", c("a")}, {"Y", f(c("a"))}}};
  Instantiation rho;
  rho.set("X", c("a"));
  rho.set("Y", f(c("a")));
  CHECK(en.compatible(rho, s, d));
  CHECK_FALSE(en.compatible(rho.extended("Y", c("a")), s, d));
  auto proj = en.project(s, d);
  CHECK(proj.assign.count("Y") == 0);
  Instantiation outer;
  outer.set("X", c("a"));
  CHECK(en.compatible(outer, proj, d.without_last_meta()));
  CHECK(en.witness(s, d, outer) == f(c("a")));
}

TEST_CASE("custom ground validity predicate") {
  // valid iff some literal is p(a)
  GroundValidity gvp = [](const std::vector<Literal>& lits) -> std::optional<std::vector<std::size_t>> {
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (lits[i] == p(c("a"))) return std::vector<std::size_t>{i};
    }
    return std::nullopt;
  };
  EnumTheory en(af(), EnumConfig{}, gvp);
  Domain d = Domain::initial({}).add_meta(meta("X"));
  auto ys = drain(en.consistency({p(X("X"))}, d), {});
  REQUIRE(ys.size() == 1);
  CHECK(ys[0].assign.at("X") == c("a"));
  CHECK(en.ground_valid({p(c("a"))}));
  CHECK_FALSE(en.ground_valid({p(f(c("a")))}));
}
