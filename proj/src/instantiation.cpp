#include "seqmod/instantiation.hpp"

#include "seqmod/errors.hpp"

namespace seqmod {

void Instantiation::set(const std::string& meta, Term value) { values_.insert_or_assign(meta, std::move(value)); }

const Term* Instantiation::get(const std::string& meta) const {
  auto it = values_.find(meta);
  return it == values_.end() ? nullptr : &it->second;
}

Instantiation Instantiation::extended(const std::string& meta, Term value) const {
  Instantiation r = *this;
  r.set(meta, std::move(value));
  return r;
}

Instantiation Instantiation::restricted(const Domain& d) const {
  Instantiation r;
  for (const auto& m : d.metas()) {
    if (const Term* t = get(m.var.name)) r.set(m.var.name, *t);
  }
  return r;
}

std::function<std::optional<Term>(const Var&)> Instantiation::mapper() const {
  return [this](const Var& v) -> std::optional<Term> {
    if (!v.is_meta()) return std::nullopt;
    const Term* t = get(v.name);
    if (!t) throw DomainError("instantiation does not map " + v.name);
    return *t;
  };
}

Term Instantiation::apply(const Term& t) const { return t.map_vars(mapper()); }
Literal Instantiation::apply(const Literal& l) const { return l.map_vars(mapper()); }
Formula Instantiation::apply(const Formula& f) const { return f.map_vars(mapper()); }

Context Instantiation::apply(const Context& ctx) const {
  Context out;
  out.reserve(ctx.size());
  for (const auto& f : ctx) out.push_back(apply(f));
  return out;
}

std::vector<Literal> Instantiation::apply(const std::vector<Literal>& lits) const {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (const auto& l : lits) out.push_back(apply(l));
  return out;
}

void Instantiation::validate(const Domain& d) const {
  if (values_.size() != d.metas().size()) throw DomainError("instantiation is not domain-complete");
  for (const auto& m : d.metas()) {
    const Term* t = get(m.var.name);
    if (!t) throw DomainError("instantiation does not map " + m.var.name);
    if (t->sort() != m.var.sort) throw SortError("instantiation of " + m.var.name + " has the wrong sort");
    std::set<Var> vars;
    t->collect_vars(vars);
    for (const auto& v : vars) {
      if (v.is_meta()) throw DomainError("image of " + m.var.name + " is not ground");
      if (v.kind == VarKind::Bound) throw DomainError("image of " + m.var.name + " has a bound variable");
      if (!d.authorises(m.var.name, v)) {
        throw DomainError("image of " + m.var.name + " uses unauthorised eigenvariable " + v.name);
      }
    }
  }
}

bool Instantiation::valid_for(const Domain& d) const {
  try {
    validate(d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string Instantiation::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : values_) {
    if (!first) s += ", ";
    first = false;
    s += k + " -> " + v.to_string();
  }
  return s + "}";
}

std::vector<Rational> default_rational_samples() {
  return {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
          Rational(1),  Rational(2),  Rational(15),    Rational(23), Rational(46, 3)};
}

std::vector<Term> enumerate_ground_terms(const Signature& sig, const std::vector<Var>& eigens, Sort sort,
                                         std::size_t depth, const std::vector<Rational>& samples) {
  std::vector<Term> out;
  if (sort == Sort::Rational) {
    for (const auto& q : samples) out.push_back(Term::number(q));
    for (const auto& e : eigens) {
      if (e.sort == Sort::Rational) out.push_back(Term::variable(e));
    }
    return out;
  }
  for (const auto& f : sig.functions()) {
    if (f.arity == 0) out.push_back(Term::app(f.name));
  }
  for (const auto& e : eigens) {
    if (e.sort == Sort::Individual) out.push_back(Term::variable(e));
  }
  if (out.empty()) return out;
  std::size_t previous_level_start = 0;
  for (std::size_t level = 1; level <= depth; ++level) {
    const std::vector<Term> below(out.begin(), out.end());
    std::size_t level_start = out.size();
    for (const auto& f : sig.functions()) {
      if (f.arity == 0) continue;
      std::vector<std::size_t> idx(f.arity, 0);
      bool done = false;
      while (!done) {
        bool reaches = false;
        for (auto i : idx) reaches = reaches || i >= previous_level_start;
        if (reaches) {
          std::vector<Term> args;
          args.reserve(f.arity);
          for (auto i : idx) args.push_back(below[i]);
          out.push_back(Term::app(f.name, std::move(args)));
        }
        done = true;
        for (std::size_t pos = f.arity; pos-- > 0;) {
          if (++idx[pos] < below.size()) {
            done = false;
            break;
          }
          idx[pos] = 0;
        }
      }
    }
    previous_level_start = level_start;
  }
  return out;
}

std::vector<Term> enumerate_ground_terms(const Signature& sig, const Domain& d, const Var& meta, std::size_t depth,
                                         const std::vector<Rational>& samples) {
  return enumerate_ground_terms(sig, d.authorised(meta.name), meta.sort, depth, samples);
}

std::vector<Instantiation> enumerate_instantiations(const Signature& sig, const Domain& d, std::size_t depth,
                                                    const std::vector<Rational>& samples) {
  std::vector<Instantiation> result{Instantiation{}};
  for (const auto& m : d.metas()) {
    auto terms = enumerate_ground_terms(sig, d, m.var, depth, samples);
    std::vector<Instantiation> next;
    next.reserve(result.size() * terms.size());
    for (const auto& rho : result) {
      for (const auto& t : terms) next.push_back(rho.extended(m.var.name, t));
    }
    result = std::move(next);
  }
  return result;
}

}  // namespace seqmod
