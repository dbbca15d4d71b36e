#include "seqmod/fol.hpp"

#include "seqmod/errors.hpp"

#include <algorithm>
#include <limits>

namespace seqmod {

namespace {

constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

std::size_t eigen_position(const Domain& d, const Var& v) {
  auto idx = d.eigen_index(v.name);
  return idx ? *idx : kUnlimited;
}

/// Visits variable occurrences left to right.
void visit_vars(const Term& t, const std::function<void(const Var&)>& fn) {
  t.map_vars([&](const Var& v) -> std::optional<Term> {
    fn(v);
    return std::nullopt;
  });
}

class Unifier {
 public:
  Unifier(const Domain& d, const SubstConstraint& base) : d_(d), bind_(base.bind), limit_(base.limit) {}

  std::size_t limit_of(const std::string& name) const {
    std::size_t l = kUnlimited;
    if (const auto* m = d_.find_meta(name)) l = m->authorised;
    auto it = limit_.find(name);
    if (it != limit_.end()) l = std::min(l, it->second);
    return l;
  }

  Term walk(const Term& t) const {
    return t.map_vars([&](const Var& v) -> std::optional<Term> {
      if (!v.is_meta()) return std::nullopt;
      auto it = bind_.find(v.name);
      if (it == bind_.end()) return std::nullopt;
      return it->second;
    });
  }

  bool unify(const Term& a, const Term& b) {
    Term s = walk(a);
    Term t = walk(b);
    if (s == t) return true;
    bool s_meta = s.kind() == Term::Kind::Variable && s.var().is_meta();
    bool t_meta = t.kind() == Term::Kind::Variable && t.var().is_meta();
    if (s_meta && t_meta) return bind_pair(s.var(), t.var());
    if (s_meta) return bind_var(s.var(), t);
    if (t_meta) return bind_var(t.var(), s);
    if (s.kind() == Term::Kind::App && t.kind() == Term::Kind::App && s.symbol() == t.symbol() &&
        s.args().size() == t.args().size()) {
      for (std::size_t i = 0; i < s.args().size(); ++i) {
        if (!unify(s.args()[i], t.args()[i])) return false;
      }
      return true;
    }
    return false;
  }

  /// Restricts the eigenvariables `name` (and whatever it is bound to) may use.
  bool tighten(const std::string& name, std::size_t limit) {
    auto it = bind_.find(name);
    if (it == bind_.end()) {
      limit_[name] = std::min(limit_of(name), limit);
      return true;
    }
    return restrict_term(it->second, limit);
  }

  SubstConstraint result() const { return SubstConstraint{false, bind_, limit_}; }

 private:
  bool restrict_term(const Term& t, std::size_t limit) {
    std::set<Var> vars;
    t.collect_vars(vars);
    for (const auto& v : vars) {
      if (v.is_eigen() && eigen_position(d_, v) >= limit) return false;
    }
    for (const auto& v : vars) {
      if (v.is_meta()) limit_[v.name] = std::min(limit_of(v.name), limit);
    }
    return true;
  }

  bool bind_pair(const Var& x, const Var& y) {
    auto ix = d_.meta_index(x.name);
    auto iy = d_.meta_index(y.name);
    if (!ix) return bind_var(x, Term::variable(y));
    if (!iy) return bind_var(y, Term::variable(x));
    if (*ix > *iy) return bind_var(x, Term::variable(y));
    return bind_var(y, Term::variable(x));
  }

  bool bind_var(const Var& x, const Term& t) {
    if (x.sort != t.sort()) return false;
    if (t.mentions(x)) return false;
    std::size_t lim = limit_of(x.name);
    if (lim != kUnlimited && !restrict_term(t, lim)) return false;
    for (auto& [name, range] : bind_) range = range.substitute(x, t);
    bind_.insert_or_assign(x.name, t);
    limit_.erase(x.name);
    return true;
  }

  const Domain& d_;
  std::map<std::string, Term> bind_;
  std::map<std::string, std::size_t> limit_;
};

bool match(const Term& pattern, const Term& ground, std::map<std::string, Term>& theta) {
  if (pattern.kind() == Term::Kind::Variable && pattern.var().is_meta()) {
    if (pattern.sort() != ground.sort()) return false;
    auto [it, inserted] = theta.emplace(pattern.var().name, ground);
    return inserted || it->second == ground;
  }
  if (pattern.kind() == Term::Kind::App) {
    if (ground.kind() != Term::Kind::App || ground.symbol() != pattern.symbol() ||
        ground.args().size() != pattern.args().size()) {
      return false;
    }
    for (std::size_t i = 0; i < pattern.args().size(); ++i) {
      if (!match(pattern.args()[i], ground.args()[i], theta)) return false;
    }
    return true;
  }
  return pattern == ground;
}

Term substitute_known(const Term& t, const Instantiation& rho) {
  return t.map_vars([&](const Var& v) -> std::optional<Term> {
    if (!v.is_meta()) return std::nullopt;
    if (const Term* val = rho.get(v.name)) return *val;
    return std::nullopt;
  });
}

bool within(const Domain& d, const Term& t, std::size_t limit) {
  std::set<Var> vars;
  t.collect_vars(vars);
  return std::all_of(vars.begin(), vars.end(),
                     [&](const Var& v) { return !v.is_eigen() || eigen_position(d, v) < limit; });
}

/// Matches every binding of sigma against rho, treating meta-variables that
/// rho does not map as pattern variables.
std::optional<std::map<std::string, Term>> match_instance(const SubstConstraint& sigma, const Instantiation& rho,
                                                          const Domain& d) {
  std::map<std::string, Term> theta;
  for (const auto& [name, range] : sigma.bind) {
    const Term* value = rho.get(name);
    if (!value) {
      if (d.find_meta(name)) continue;
      throw DomainError("constraint binds undeclared meta-variable " + name);
    }
    if (!match(substitute_known(range, rho), *value, theta)) return std::nullopt;
  }
  for (const auto& [name, lim] : sigma.limit) {
    const Term* value = rho.get(name);
    if (!value) {
      auto it = theta.find(name);
      if (it == theta.end()) continue;
      value = &it->second;
    }
    if (!within(d, *value, lim)) return std::nullopt;
  }
  return theta;
}

}  // namespace

SubstConstraint normalise(SubstConstraint sigma, const Domain& d) {
  if (sigma.bottom) return SubstConstraint::bot();
  Unifier view(d, sigma);
  std::map<std::string, std::string> rename;
  std::map<std::string, Sort> sorts;
  for (const auto& m : d.metas()) {
    auto it = sigma.bind.find(m.var.name);
    if (it == sigma.bind.end()) continue;
    visit_vars(it->second, [&](const Var& v) {
      if (!v.is_meta() || d.find_meta(v.name) || rename.count(v.name)) return;
      rename.emplace(v.name, "_o" + std::to_string(rename.size() + 1));
      sorts.emplace(v.name, v.sort);
    });
  }
  SubstConstraint out;
  for (const auto& m : d.metas()) {
    const std::string& name = m.var.name;
    if (!name.empty() && name[0] == '_') throw DomainError("meta-variable names may not start with '_'");
    auto it = sigma.bind.find(name);
    if (it != sigma.bind.end()) {
      out.bind.emplace(name, it->second.map_vars([&](const Var& v) -> std::optional<Term> {
        auto r = rename.find(v.name);
        if (!v.is_meta() || r == rename.end()) return std::nullopt;
        return Term::meta(r->second, v.sort);
      }));
      continue;
    }
    std::size_t lim = view.limit_of(name);
    if (lim < m.authorised) out.limit.emplace(name, lim);
  }
  for (const auto& [old_name, new_name] : rename) {
    std::size_t lim = view.limit_of(old_name);
    if (lim != kUnlimited) out.limit.emplace(new_name, lim);
  }
  return out;
}

SubstConstraint mgu(const std::vector<std::pair<Term, Term>>& pairs, const Domain& d, const SubstConstraint& base) {
  if (base.bottom) return SubstConstraint::bot();
  Unifier u(d, base);
  for (const auto& [a, b] : pairs) {
    if (!u.unify(a, b)) return SubstConstraint::bot();
  }
  return normalise(u.result(), d);
}

Term apply(const SubstConstraint& sigma, const Term& t) {
  return t.map_vars([&](const Var& v) -> std::optional<Term> {
    if (!v.is_meta()) return std::nullopt;
    auto it = sigma.bind.find(v.name);
    if (it == sigma.bind.end()) return std::nullopt;
    return it->second;
  });
}

Literal apply(const SubstConstraint& sigma, const Literal& l) {
  return l.map_vars([&](const Var& v) -> std::optional<Term> {
    if (!v.is_meta()) return std::nullopt;
    auto it = sigma.bind.find(v.name);
    if (it == sigma.bind.end()) return std::nullopt;
    return it->second;
  });
}

bool complementary_pair(const std::vector<Literal>& lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i] == lits[j].negated()) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// FolTheory

FolTheory::Stream::Stream(std::vector<Literal> lits, Domain d) : lits_(std::move(lits)), domain_(std::move(d)) {}

std::optional<Closure<SubstConstraint>> FolTheory::Stream::pull(const SubstConstraint& input) {
  if (input.bottom) return std::nullopt;
  const std::size_t n = lits_.size();
  while (i_ < n) {
    while (j_ < n) {
      const Literal& a = lits_[i_];
      const Literal& b = lits_[j_];
      ++j_;
      if (a.is_arith() || b.is_arith() || a.positive() == b.positive()) continue;
      const auto& pa = a.pred_atom();
      const auto& pb = b.pred_atom();
      if (pa.symbol != pb.symbol || pa.args.size() != pb.args.size()) continue;
      std::vector<std::pair<Term, Term>> pairs;
      for (std::size_t k = 0; k < pa.args.size(); ++k) pairs.emplace_back(pa.args[k], pb.args[k]);
      SubstConstraint r = mgu(pairs, domain_, input);
      if (!r.bottom) return Closure<SubstConstraint>{{a, b}, std::move(r)};
    }
    ++i_;
    j_ = i_ + 1;
  }
  return std::nullopt;
}

SubstConstraint FolTheory::project(const SubstConstraint& sigma, const Domain& d_with_x) const {
  if (sigma.bottom) return SubstConstraint::bot();
  const Var& x = d_with_x.last_meta();
  SubstConstraint s = sigma;
  if (s.bind.erase(x.name) == 0) {
    Unifier view(d_with_x, s);
    s.limit[x.name] = view.limit_of(x.name);
  } else {
    s.limit.erase(x.name);
  }
  return normalise(std::move(s), d_with_x.without_last_meta());
}

SubstConstraint FolTheory::lift(const SubstConstraint& sigma, const Domain& d_with_x) const {
  return normalise(sigma, d_with_x);
}

std::optional<SubstConstraint> FolTheory::meet(const SubstConstraint& a, const SubstConstraint& b,
                                               const Domain& d) const {
  if (a.bottom || b.bottom) return std::nullopt;
  std::map<std::string, std::string> rename;
  auto renamed = [&](const Term& t) {
    return t.map_vars([&](const Var& v) -> std::optional<Term> {
      if (!v.is_meta() || d.find_meta(v.name)) return std::nullopt;
      auto [it, inserted] = rename.emplace(v.name, "_t" + std::to_string(rename.size() + 1));
      return Term::meta(it->second, v.sort);
    });
  };
  std::vector<std::pair<Term, Term>> pairs;
  for (const auto& [name, range] : b.bind) {
    pairs.emplace_back(Term::meta(name, range.sort()), renamed(range));
  }
  Unifier u(d, a);
  for (const auto& [name, lim] : b.limit) {
    std::string target = name;
    if (!d.find_meta(name)) {
      auto it = rename.find(name);
      if (it == rename.end()) continue;
      target = it->second;
    }
    if (!u.tighten(target, lim)) return std::nullopt;
  }
  for (const auto& [x, t] : pairs) {
    if (!u.unify(x, t)) return std::nullopt;
  }
  return normalise(u.result(), d);
}

bool FolTheory::ground_valid(const std::vector<Literal>& lits) const {
  for (const auto& l : lits) {
    if (!l.is_ground()) throw PreconditionError("ground validity on non-ground literal " + l.to_string());
  }
  return complementary_pair(lits);
}

bool FolTheory::compatible(const Instantiation& rho, const SubstConstraint& sigma, const Domain& d) const {
  if (sigma.bottom) return false;
  return match_instance(sigma, rho, d).has_value();
}

Term FolTheory::default_term(const Domain& d, Sort sort, std::size_t limit) const {
  std::size_t n = std::min(limit, d.eigens().size());
  std::vector<Var> eigens(d.eigens().begin(), d.eigens().begin() + static_cast<std::ptrdiff_t>(n));
  auto terms = enumerate_ground_terms(sig_, eigens, sort, 0, default_rational_samples());
  if (terms.empty()) throw PreconditionError("no ground term available for witness");
  return terms.front();
}

Term FolTheory::witness(const SubstConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const {
  if (sigma.bottom) throw PreconditionError("witness of the unsatisfiable constraint");
  const Var& x = d_with_x.last_meta();
  auto theta = match_instance(sigma, rho, d_with_x);
  if (!theta) throw PreconditionError("instantiation is not compatible with the projection");
  Unifier view(d_with_x, sigma);
  auto fill = [&](const Term& t) {
    return t.map_vars([&](const Var& v) -> std::optional<Term> {
      if (!v.is_meta()) return std::nullopt;
      if (const Term* val = rho.get(v.name)) return *val;
      auto it = theta->find(v.name);
      if (it != theta->end()) return it->second;
      return default_term(d_with_x, v.sort, view.limit_of(v.name));
    });
  };
  auto it = sigma.bind.find(x.name);
  if (it != sigma.bind.end()) return fill(it->second);
  return fill(Term::variable(x));
}

std::string FolTheory::render(const SubstConstraint& sigma) const {
  if (sigma.bottom) return "bottom";
  std::string s = "{";
  bool first = true;
  for (const auto& [name, range] : sigma.bind) {
    if (!first) s += ", ";
    first = false;
    s += name + " -> " + range.to_string();
  }
  s += "}";
  if (!sigma.limit.empty()) {
    s += " limits{";
    first = true;
    for (const auto& [name, lim] : sigma.limit) {
      if (!first) s += ", ";
      first = false;
      s += name + ":" + std::to_string(lim);
    }
    s += "}";
  }
  return s;
}

}  // namespace seqmod
