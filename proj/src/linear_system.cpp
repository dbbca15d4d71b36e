#include "seqmod/linear_system.hpp"

#include "seqmod/errors.hpp"

#include <algorithm>
#include <limits>

namespace seqmod {

namespace {

LinearExpr linear_part(const LinearExpr& e) { return e - LinearExpr(e.constant()); }

Rational value_of(const LinearExpr& e, const std::map<Var, Rational>& values) {
  Rational r = e.constant();
  for (const auto& [v, c] : e.coefficients()) {
    auto it = values.find(v);
    if (it == values.end()) throw DomainError("no value for variable " + v.name);
    r += c * it->second;
  }
  return r;
}

bool holds(Cmp cmp, const Rational& v) {
  switch (cmp) {
    case Cmp::Le:
      return v <= 0;
    case Cmp::Lt:
      return v < 0;
    case Cmp::Eq:
      return v == 0;
  }
  return false;
}

}  // namespace

LinAtom normalise_atom(const LinAtom& atom) {
  if (atom.expr.is_constant()) return atom;
  Rational lead = atom.expr.coefficients().begin()->second;
  Rational factor = atom.cmp == Cmp::Eq ? Rational(1 / lead) : Rational(1 / abs(lead));
  return LinAtom{atom.expr * factor, atom.cmp};
}

std::optional<bool> constant_truth(const LinAtom& atom) {
  if (!atom.expr.is_constant()) return std::nullopt;
  return holds(atom.cmp, atom.expr.constant());
}

bool evaluate(const LinAtom& atom, const std::map<Var, Rational>& values) {
  return holds(atom.cmp, value_of(atom.expr, values));
}

std::string render(const LinAtom& atom) {
  LinearExpr lhs = linear_part(atom.expr);
  Rational rhs = -atom.expr.constant();
  const char* op = atom.cmp == Cmp::Le ? " <= " : atom.cmp == Cmp::Lt ? " < " : " = ";
  return lhs.to_string() + op + rhs.get_str();
}

std::optional<System> make_system(std::vector<LinAtom> atoms, const LraLimits& limits) {
  struct Bounds {
    std::optional<Rational> eq;
    std::optional<Rational> ineq;
    bool strict = false;
  };
  std::map<LinearExpr, Bounds> by_linear_part;
  for (const auto& raw : atoms) {
    LinAtom a = normalise_atom(raw);
    if (auto t = constant_truth(a)) {
      if (!*t) return std::nullopt;
      continue;
    }
    Bounds& b = by_linear_part[linear_part(a.expr)];
    const Rational& c = a.expr.constant();
    if (a.cmp == Cmp::Eq) {
      if (b.eq && *b.eq != c) return std::nullopt;
      b.eq = c;
      continue;
    }
    bool strict = a.cmp == Cmp::Lt;
    if (!b.ineq || c > *b.ineq || (c == *b.ineq && strict && !b.strict)) {
      b.ineq = c;
      b.strict = strict;
    }
  }
  System out;
  for (const auto& [lin, b] : by_linear_part) {
    if (b.eq) {
      if (b.ineq) {
        Rational v = *b.ineq - *b.eq;
        if (!holds(b.strict ? Cmp::Lt : Cmp::Le, v)) return std::nullopt;
      }
      out.push_back(LinAtom{lin + LinearExpr(*b.eq), Cmp::Eq});
    } else {
      out.push_back(LinAtom{lin + LinearExpr(*b.ineq), b.strict ? Cmp::Lt : Cmp::Le});
    }
  }
  std::sort(out.begin(), out.end());
  if (out.size() > limits.max_atoms) {
    throw ResourceError("linear system exceeds " + std::to_string(limits.max_atoms) + " atoms");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dnf

Dnf Dnf::truth() {
  Dnf d;
  d.disjuncts_.push_back({});
  return d;
}

Dnf Dnf::falsity() { return Dnf{}; }

Dnf Dnf::of_atom(const LinAtom& atom, const LraLimits& limits) { return of_systems({{atom}}, limits); }

Dnf Dnf::of_systems(std::vector<std::vector<LinAtom>> systems, const LraLimits& limits) {
  std::vector<System> kept;
  for (auto& s : systems) {
    auto sys = make_system(std::move(s), limits);
    if (!sys) continue;
    if (sys->empty()) return truth();
    kept.push_back(std::move(*sys));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  Dnf d;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < kept.size() && !subsumed; ++j) {
      if (i == j || kept[j].size() >= kept[i].size()) continue;
      subsumed = std::includes(kept[i].begin(), kept[i].end(), kept[j].begin(), kept[j].end());
    }
    if (!subsumed) d.disjuncts_.push_back(kept[i]);
  }
  if (d.disjuncts_.size() > limits.max_disjuncts) {
    throw ResourceError("formula exceeds " + std::to_string(limits.max_disjuncts) + " disjuncts");
  }
  return d;
}

std::set<Var> Dnf::vars() const {
  std::set<Var> out;
  for (const auto& s : disjuncts_) {
    for (const auto& a : s) {
      for (const auto& [v, c] : a.expr.coefficients()) out.insert(v);
    }
  }
  return out;
}

bool Dnf::mentions(const Var& v) const {
  for (const auto& s : disjuncts_) {
    for (const auto& a : s) {
      if (a.expr.mentions(v)) return true;
    }
  }
  return false;
}

namespace {

std::vector<std::vector<LinAtom>> product(const Dnf& a, const Dnf& b, const LraLimits& limits) {
  std::size_t n = a.disjuncts().size() * b.disjuncts().size();
  if (n > 16 * limits.max_disjuncts) {
    throw ResourceError("conjunction would produce " + std::to_string(n) + " disjuncts");
  }
  std::vector<std::vector<LinAtom>> out;
  out.reserve(n);
  for (const auto& x : a.disjuncts()) {
    for (const auto& y : b.disjuncts()) {
      std::vector<LinAtom> s = x;
      s.insert(s.end(), y.begin(), y.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Dnf conjoin(const Dnf& a, const Dnf& b, const LraLimits& limits) {
  return Dnf::of_systems(product(a, b, limits), limits);
}

Dnf conjoin_pruned(const Dnf& a, const Dnf& b, const LraLimits& limits) {
  auto systems = product(a, b, limits);
  std::vector<std::vector<LinAtom>> kept;
  for (auto& s : systems) {
    auto sys = make_system(std::move(s), limits);
    if (sys && system_sat(*sys, limits)) kept.push_back(std::move(*sys));
  }
  return Dnf::of_systems(std::move(kept), limits);
}

Dnf disjoin(const Dnf& a, const Dnf& b, const LraLimits& limits) {
  std::vector<std::vector<LinAtom>> all(a.disjuncts().begin(), a.disjuncts().end());
  all.insert(all.end(), b.disjuncts().begin(), b.disjuncts().end());
  return Dnf::of_systems(std::move(all), limits);
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin

std::optional<System> fm_eliminate(const System& system, const Var& v, const LraLimits& limits) {
  for (std::size_t i = 0; i < system.size(); ++i) {
    const LinAtom& eq = system[i];
    if (eq.cmp != Cmp::Eq || !eq.expr.mentions(v)) continue;
    Rational c = eq.expr.coefficient(v);
    LinearExpr solution = eq.expr.without(v) * (Rational(-1) / c);
    std::vector<LinAtom> out;
    for (std::size_t j = 0; j < system.size(); ++j) {
      if (j == i) continue;
      out.push_back(LinAtom{system[j].expr.substitute(v, solution), system[j].cmp});
    }
    return make_system(std::move(out), limits);
  }
  std::vector<LinAtom> out;
  std::vector<const LinAtom*> lower;
  std::vector<const LinAtom*> upper;
  for (const auto& a : system) {
    Rational c = a.expr.coefficient(v);
    if (c == 0) {
      out.push_back(a);
    } else if (c > 0) {
      upper.push_back(&a);
    } else {
      lower.push_back(&a);
    }
  }
  for (const LinAtom* l : lower) {
    Rational a = l->expr.coefficient(v);
    for (const LinAtom* u : upper) {
      Rational b = u->expr.coefficient(v);
      LinearExpr combined = l->expr * b + u->expr * (-a);
      bool strict = l->cmp == Cmp::Lt || u->cmp == Cmp::Lt;
      out.push_back(LinAtom{combined.without(v), strict ? Cmp::Lt : Cmp::Le});
    }
  }
  return make_system(std::move(out), limits);
}

Dnf fm_eliminate(const Dnf& f, const Var& v, const LraLimits& limits) {
  std::vector<std::vector<LinAtom>> out;
  for (const auto& s : f.disjuncts()) {
    if (auto r = fm_eliminate(s, v, limits)) out.push_back(std::move(*r));
  }
  return Dnf::of_systems(std::move(out), limits);
}

Dnf exists(const Dnf& f, const std::vector<Var>& vars, const LraLimits& limits) {
  Dnf r = f;
  for (const auto& v : vars) r = fm_eliminate(r, v, limits);
  return r;
}

bool system_sat(const System& system, const LraLimits& limits) {
  System s = system;
  while (!s.empty()) {
    std::set<Var> vars;
    std::optional<Var> eq_var;
    for (const auto& a : s) {
      for (const auto& [v, c] : a.expr.coefficients()) {
        vars.insert(v);
        if (a.cmp == Cmp::Eq && !eq_var) eq_var = v;
      }
    }
    Var pick;
    if (eq_var) {
      pick = *eq_var;
    } else {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (const auto& v : vars) {
        std::size_t lo = 0;
        std::size_t hi = 0;
        for (const auto& a : s) {
          Rational c = a.expr.coefficient(v);
          if (c > 0) ++hi;
          if (c < 0) ++lo;
        }
        std::size_t cost = lo * hi;
        if (cost < best) {
          best = cost;
          pick = v;
        }
      }
    }
    auto next = fm_eliminate(s, pick, limits);
    if (!next) return false;
    s = std::move(*next);
  }
  return true;
}

bool lra_sat(const Dnf& f, const LraLimits& limits) {
  return std::any_of(f.disjuncts().begin(), f.disjuncts().end(),
                     [&](const System& s) { return system_sat(s, limits); });
}

Dnf prune(const Dnf& f, const LraLimits& limits) {
  std::vector<std::vector<LinAtom>> kept;
  for (const auto& s : f.disjuncts()) {
    if (system_sat(s, limits)) kept.push_back(s);
  }
  return Dnf::of_systems(std::move(kept), limits);
}

Dnf negate(const Dnf& f, const LraLimits& limits) {
  Dnf result = Dnf::truth();
  for (const auto& s : f.disjuncts()) {
    std::vector<std::vector<LinAtom>> negated;
    for (const auto& a : s) {
      switch (a.cmp) {
        case Cmp::Le:
          negated.push_back({LinAtom{-a.expr, Cmp::Lt}});
          break;
        case Cmp::Lt:
          negated.push_back({LinAtom{-a.expr, Cmp::Le}});
          break;
        case Cmp::Eq:
          negated.push_back({LinAtom{a.expr, Cmp::Lt}});
          negated.push_back({LinAtom{-a.expr, Cmp::Lt}});
          break;
      }
    }
    result = conjoin_pruned(result, Dnf::of_systems(std::move(negated), limits), limits);
    if (result.is_false()) break;
  }
  return result;
}

Dnf forall(const Dnf& f, const std::vector<Var>& vars, const LraLimits& limits) {
  if (vars.empty()) return f;
  return negate(exists(negate(f, limits), vars, limits), limits);
}

bool valid(const Dnf& f, const LraLimits& limits) {
  if (f.is_true()) return true;
  if (f.is_false()) return false;
  return negate(f, limits).is_false();
}

bool evaluate(const Dnf& f, const std::map<Var, Rational>& values) {
  for (const auto& s : f.disjuncts()) {
    if (std::all_of(s.begin(), s.end(), [&](const LinAtom& a) { return evaluate(a, values); })) return true;
  }
  return false;
}

Dnf substitute(const Dnf& f, const std::function<std::optional<LinearExpr>(const Var&)>& replace,
               const LraLimits& limits) {
  std::vector<std::vector<LinAtom>> out;
  for (const auto& s : f.disjuncts()) {
    std::vector<LinAtom> atoms;
    for (const auto& a : s) {
      LinearExpr e(a.expr.constant());
      for (const auto& [v, c] : a.expr.coefficients()) {
        auto r = replace(v);
        e = e + (r ? *r : LinearExpr::variable(v)) * c;
      }
      atoms.push_back(LinAtom{e, a.cmp});
    }
    out.push_back(std::move(atoms));
  }
  return Dnf::of_systems(std::move(out), limits);
}

std::string render(const Dnf& f) {
  if (f.is_true()) return "TRUE";
  if (f.is_false()) return "FALSE";
  std::string s;
  for (std::size_t i = 0; i < f.disjuncts().size(); ++i) {
    if (i) s += " | ";
    const auto& sys = f.disjuncts()[i];
    if (f.disjuncts().size() > 1) s += "(";
    for (std::size_t j = 0; j < sys.size(); ++j) {
      if (j) s += " & ";
      s += render(sys[j]);
    }
    if (f.disjuncts().size() > 1) s += ")";
  }
  return s;
}

}  // namespace seqmod
