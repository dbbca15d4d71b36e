#include "seqmod/lra.hpp"

#include "seqmod/errors.hpp"

#include <algorithm>

namespace seqmod {

namespace {

struct Bound {
  Rational value;
  bool strict = false;
};

/// Picks a value for x in a single-variable system; nullopt if it has no solution.
std::optional<Rational> pick_in_interval(const System& system, const Var& x) {
  std::optional<Bound> lo;
  std::optional<Bound> hi;
  std::optional<Rational> point;
  for (const auto& a : system) {
    Rational c = a.expr.coefficient(x);
    Rational r = a.expr.without(x).constant();
    Rational v = -r / c;
    if (a.cmp == Cmp::Eq) {
      if (point && *point != v) return std::nullopt;
      point = v;
      continue;
    }
    bool strict = a.cmp == Cmp::Lt;
    if (c > 0) {
      if (!hi || v < hi->value || (v == hi->value && strict)) hi = Bound{v, strict};
    } else {
      if (!lo || v > lo->value || (v == lo->value && strict)) lo = Bound{v, strict};
    }
  }
  if (point) {
    if (lo && (*point < lo->value || (*point == lo->value && lo->strict))) return std::nullopt;
    if (hi && (*point > hi->value || (*point == hi->value && hi->strict))) return std::nullopt;
    return point;
  }
  if (lo && hi) {
    if (lo->value < hi->value) return Rational((lo->value + hi->value) / 2);
    if (lo->value == hi->value && !lo->strict && !hi->strict) return lo->value;
    return std::nullopt;
  }
  if (lo) return Rational(lo->value + 1);
  if (hi) return Rational(hi->value - 1);
  return Rational(0);
}

std::vector<LinearExpr> symbolic_candidates(const System& system, const Var& x) {
  std::vector<LinearExpr> lower;
  std::vector<LinearExpr> upper;
  std::vector<LinearExpr> out;
  for (const auto& a : system) {
    Rational c = a.expr.coefficient(x);
    if (c == 0) continue;
    LinearExpr solved = a.expr.without(x) * (Rational(-1) / c);
    if (a.cmp == Cmp::Eq) {
      out.push_back(solved);
    } else if (c > 0) {
      upper.push_back(solved);
    } else {
      lower.push_back(solved);
    }
  }
  for (const auto& l : lower) {
    for (const auto& u : upper) out.push_back((l + u) * Rational(1, 2));
  }
  for (const auto& l : lower) out.push_back(l + LinearExpr(Rational(1)));
  for (const auto& u : upper) out.push_back(u - LinearExpr(Rational(1)));
  out.push_back(LinearExpr(Rational(0)));
  return out;
}

}  // namespace

std::optional<Closure<PolyConstraint>> LraTheory::Stream::pull(const PolyConstraint& input) {
  while (next_ < candidates_.size()) {
    const Candidate& c = candidates_[next_++];
    if (auto m = theory_->meet(input, PolyConstraint{c.closer}, domain_)) {
      return Closure<PolyConstraint>{c.used, std::move(*m)};
    }
  }
  return std::nullopt;
}

std::optional<Dnf> LraTheory::literal_dnf(const Literal& l) const {
  if (!l.is_arith()) return std::nullopt;
  const auto& a = l.arith_atom();
  LinearExpr e = a.lhs - a.rhs;
  if (l.positive()) {
    Cmp cmp = a.rel == Relation::Le ? Cmp::Le : a.rel == Relation::Lt ? Cmp::Lt : Cmp::Eq;
    return Dnf::of_atom(LinAtom{e, cmp}, cfg_.limits);
  }
  switch (a.rel) {
    case Relation::Le:
      return Dnf::of_atom(LinAtom{-e, Cmp::Lt}, cfg_.limits);
    case Relation::Lt:
      return Dnf::of_atom(LinAtom{-e, Cmp::Le}, cfg_.limits);
    case Relation::Eq:
      return Dnf::of_systems({{LinAtom{e, Cmp::Lt}}, {LinAtom{-e, Cmp::Lt}}}, cfg_.limits);
  }
  return std::nullopt;
}

std::optional<Dnf> LraTheory::pair_dnf(const Literal& a, const Literal& b) const {
  if (a.is_arith() || b.is_arith() || a.positive() == b.positive()) return std::nullopt;
  const auto& pa = a.pred_atom();
  const auto& pb = b.pred_atom();
  if (pa.symbol != pb.symbol || pa.args.size() != pb.args.size()) return std::nullopt;
  std::vector<LinAtom> atoms;
  for (std::size_t i = 0; i < pa.args.size(); ++i) {
    const Term& t = pa.args[i];
    const Term& u = pb.args[i];
    if (t.sort() == Sort::Rational && u.sort() == Sort::Rational) {
      atoms.push_back(LinAtom{t.as_linear() - u.as_linear(), Cmp::Eq});
    } else if (t != u) {
      return std::nullopt;
    }
  }
  return Dnf::of_systems({atoms}, cfg_.limits);
}

Dnf LraTheory::hide_invisible(const Dnf& f, const Domain& d) const {
  std::vector<Var> hidden;
  std::size_t visible = d.visible_eigens();
  for (const auto& v : f.vars()) {
    if (!v.is_eigen()) continue;
    auto idx = d.eigen_index(v.name);
    if (!idx || *idx >= visible) hidden.push_back(v);
  }
  return forall(f, hidden, cfg_.limits);
}

std::vector<LraTheory::Candidate> LraTheory::candidates(const std::vector<Literal>& lits, const Domain& d) const {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (auto f = pair_dnf(lits[i], lits[j])) out.push_back({{lits[i], lits[j]}, *f});
    }
  }
  for (const auto& l : lits) {
    if (auto f = literal_dnf(l)) out.push_back({{l}, *f});
  }
  if (out.size() >= 2) {
    Dnf all = Dnf::falsity();
    std::vector<Literal> used;
    for (const auto& c : out) {
      all = disjoin(all, c.closer, cfg_.limits);
      for (const auto& l : c.used) {
        if (std::find(used.begin(), used.end(), l) == used.end()) used.push_back(l);
      }
    }
    std::vector<Literal> ordered;
    for (const auto& l : lits) {
      if (std::find(used.begin(), used.end(), l) != used.end()) ordered.push_back(l);
    }
    out.push_back({std::move(ordered), std::move(all)});
  }
  for (auto& c : out) c.closer = hide_invisible(c.closer, d);
  return out;
}

PolyConstraint LraTheory::project(const PolyConstraint& sigma, const Domain& d_with_x) const {
  const Var& x = d_with_x.last_meta();
  Dnf f = fm_eliminate(sigma.dnf, x, cfg_.limits);
  return PolyConstraint{hide_invisible(f, d_with_x.without_last_meta())};
}

std::optional<PolyConstraint> LraTheory::meet(const PolyConstraint& a, const PolyConstraint& b,
                                              const Domain& d) const {
  Dnf c = conjoin_pruned(a.dnf, b.dnf, cfg_.limits);
  if (c.is_false()) return std::nullopt;
  PolyConstraint r{std::move(c)};
  if (!satisfiable(r, d)) return std::nullopt;
  return r;
}

bool LraTheory::satisfiable(const PolyConstraint& sigma, const Domain& d) const {
  if (sigma.dnf.is_false()) return false;
  if (sigma.dnf.is_true()) return true;
  auto vars = sigma.dnf.vars();
  bool has_eigen = std::any_of(vars.begin(), vars.end(), [](const Var& v) { return v.is_eigen(); });
  if (!has_eigen) return lra_sat(sigma.dnf, cfg_.limits);
  Dnf f = sigma.dnf;
  for (std::size_t k = d.metas().size(); k > 0; --k) {
    f = project(PolyConstraint{f}, d.meta_prefix(k)).dnf;
    if (f.is_false()) return false;
  }
  f = hide_invisible(f, d.meta_prefix(0));
  return !f.is_false();
}

Dnf LraTheory::instantiate(const Dnf& f, const Instantiation& rho) const {
  return substitute(
      f,
      [&](const Var& v) -> std::optional<LinearExpr> {
        if (!v.is_meta()) return std::nullopt;
        const Term* t = rho.get(v.name);
        if (!t) return std::nullopt;
        return t->as_linear();
      },
      cfg_.limits);
}

bool LraTheory::compatible(const Instantiation& rho, const PolyConstraint& sigma, const Domain& d) const {
  for (const auto& v : sigma.dnf.vars()) {
    if (v.is_meta() && !rho.contains(v.name)) {
      if (!d.find_meta(v.name)) throw DomainError("constraint mentions undeclared meta-variable " + v.name);
      throw DomainError("instantiation does not map " + v.name);
    }
  }
  Dnf g = instantiate(sigma.dnf, rho);
  return valid(g, cfg_.limits);
}

Term LraTheory::witness(const PolyConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const {
  const Var& x = d_with_x.last_meta();
  Dnf g = instantiate(sigma.dnf, rho);
  auto vars = g.vars();
  for (const auto& v : vars) {
    if (v.is_meta() && !(v == x)) throw DomainError("instantiation does not map " + v.name);
  }
  if (g.is_true()) return Term::number(0);
  bool symbolic = std::any_of(vars.begin(), vars.end(), [](const Var& v) { return v.is_eigen(); });
  if (!symbolic) {
    for (const auto& s : g.disjuncts()) {
      if (auto v = pick_in_interval(s, x)) return Term::number(*v);
    }
    throw PreconditionError("instantiation is not compatible with the projection");
  }
  for (const auto& s : g.disjuncts()) {
    for (const auto& cand : symbolic_candidates(s, x)) {
      bool authorised = true;
      for (const auto& [v, c] : cand.coefficients()) {
        authorised = authorised && v.is_eigen() && d_with_x.authorises(x.name, v);
      }
      if (!authorised) continue;
      Dnf h = substitute(
          g, [&](const Var& v) -> std::optional<LinearExpr> { return v == x ? std::optional(cand) : std::nullopt; },
          cfg_.limits);
      if (valid(h, cfg_.limits)) return Term::linear(cand);
    }
  }
  if (!compatible(rho, project(sigma, d_with_x), d_with_x.without_last_meta())) {
    throw PreconditionError("instantiation is not compatible with the projection");
  }
  throw UnsupportedWitness("no linear witness for " + x.name + " in " + render(sigma));
}

bool LraTheory::ground_valid(const std::vector<Literal>& lits) const {
  for (const auto& l : lits) {
    if (!l.is_ground()) throw PreconditionError("ground validity on non-ground literal " + l.to_string());
  }
  Dnf all = Dnf::falsity();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (auto f = pair_dnf(lits[i], lits[j])) all = disjoin(all, *f, cfg_.limits);
    }
    if (auto f = literal_dnf(lits[i])) all = disjoin(all, *f, cfg_.limits);
  }
  return valid(all, cfg_.limits);
}

}  // namespace seqmod
