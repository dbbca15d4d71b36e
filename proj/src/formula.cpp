#include "seqmod/formula.hpp"

#include "seqmod/errors.hpp"

#include <algorithm>

namespace seqmod {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::Le:
      return "<=";
    case Relation::Lt:
      return "<";
    case Relation::Eq:
      return "=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Literal

Literal Literal::pred(bool positive, std::string symbol, std::vector<Term> args) {
  return Literal(positive, PredAtom{std::move(symbol), std::move(args)});
}

Literal Literal::arith(LinearExpr lhs, Relation rel, LinearExpr rhs, bool positive) {
  for (const auto* side : {&lhs, &rhs}) {
    for (const auto& [v, c] : side->coefficients()) {
      if (v.sort != Sort::Rational) throw SortError("arithmetic atom over individual variable " + v.name);
    }
  }
  return Literal(positive, ArithAtom{std::move(lhs), rel, std::move(rhs)});
}

Literal Literal::negated() const { return Literal(!positive_, atom_); }

Literal Literal::map_vars(const std::function<std::optional<Term>(const Var&)>& f) const {
  if (is_arith()) {
    const auto& a = arith_atom();
    auto map_side = [&](const LinearExpr& e) {
      LinearExpr r(e.constant());
      for (const auto& [v, c] : e.coefficients()) {
        auto t = f(v);
        r = r + (t ? t->as_linear() : LinearExpr::variable(v)) * c;
      }
      return r;
    };
    return Literal(positive_, ArithAtom{map_side(a.lhs), a.rel, map_side(a.rhs)});
  }
  const auto& p = pred_atom();
  std::vector<Term> args;
  args.reserve(p.args.size());
  for (const auto& t : p.args) args.push_back(t.map_vars(f));
  return Literal(positive_, PredAtom{p.symbol, std::move(args)});
}

bool Literal::is_ground() const {
  std::set<Var> vars;
  collect_vars(vars);
  return std::none_of(vars.begin(), vars.end(), [](const Var& v) { return v.is_meta(); });
}

void Literal::collect_vars(std::set<Var>& out) const {
  if (is_arith()) {
    for (const auto& [v, c] : arith_atom().lhs.coefficients()) out.insert(v);
    for (const auto& [v, c] : arith_atom().rhs.coefficients()) out.insert(v);
    return;
  }
  for (const auto& t : pred_atom().args) t.collect_vars(out);
}

std::string Literal::to_string() const {
  std::string body;
  if (is_arith()) {
    const auto& a = arith_atom();
    body = a.lhs.to_string() + " " + seqmod::to_string(a.rel) + " " + a.rhs.to_string();
    return positive_ ? body : "~(" + body + ")";
  }
  const auto& p = pred_atom();
  body = p.symbol;
  if (!p.args.empty()) {
    body += "(";
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (i) body += ", ";
      body += p.args[i].to_string();
    }
    body += ")";
  }
  return positive_ ? body : "~" + body;
}

bool operator<(const Literal& a, const Literal& b) {
  if (a.atom_.index() != b.atom_.index()) return a.atom_.index() < b.atom_.index();
  if (a.is_arith()) {
    if (!(a.arith_atom() == b.arith_atom())) return a.arith_atom() < b.arith_atom();
  } else if (!(a.pred_atom() == b.pred_atom())) {
    return a.pred_atom() < b.pred_atom();
  }
  return a.positive_ < b.positive_;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  std::optional<Literal> literal;
  std::optional<Formula> left;
  std::optional<Formula> right;
  Var bound;
  std::size_t size = 1;
};

Formula Formula::lit(Literal literal) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lit;
  n->literal = std::move(literal);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->size = 1 + left.size() + right.size();
  n->left = std::move(left);
  n->right = std::move(right);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->size = 1 + left.size() + right.size();
  n->left = std::move(left);
  n->right = std::move(right);
  return Formula(std::move(n));
}

Formula Formula::forall(Var bound, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->size = 1 + body.size();
  n->bound = std::move(bound);
  n->left = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::exists(Var bound, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->size = 1 + body.size();
  n->bound = std::move(bound);
  n->left = std::move(body);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Literal& Formula::literal() const { return *node_->literal; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
const Var& Formula::bound() const { return node_->bound; }
const Formula& Formula::body() const { return *node_->left; }
std::size_t Formula::size() const { return node_->size; }

Formula Formula::substitute(const Var& bound_var, const Term& replacement) const {
  if (replacement.sort() != bound_var.sort) {
    throw SortError("cannot substitute " + replacement.to_string() + " for " + bound_var.name +
                    ": sort mismatch");
  }
  switch (kind()) {
    case Kind::Lit:
      return lit(literal().map_vars([&](const Var& v) -> std::optional<Term> {
        if (v == bound_var) return replacement;
        return std::nullopt;
      }));
    case Kind::And:
      return conj(left().substitute(bound_var, replacement), right().substitute(bound_var, replacement));
    case Kind::Or:
      return disj(left().substitute(bound_var, replacement), right().substitute(bound_var, replacement));
    case Kind::Forall:
    case Kind::Exists: {
      if (bound() == bound_var) return *this;
      Formula b = body().substitute(bound_var, replacement);
      return kind() == Kind::Forall ? forall(bound(), std::move(b)) : exists(bound(), std::move(b));
    }
  }
  return *this;
}

Formula Formula::map_vars(const std::function<std::optional<Term>(const Var&)>& f) const {
  switch (kind()) {
    case Kind::Lit:
      return lit(literal().map_vars(f));
    case Kind::And:
      return conj(left().map_vars(f), right().map_vars(f));
    case Kind::Or:
      return disj(left().map_vars(f), right().map_vars(f));
    case Kind::Forall:
    case Kind::Exists: {
      Var b = bound();
      auto shielded = [&](const Var& v) -> std::optional<Term> {
        if (v == b) return std::nullopt;
        return f(v);
      };
      Formula body2 = body().map_vars(shielded);
      return kind() == Kind::Forall ? forall(b, std::move(body2)) : exists(b, std::move(body2));
    }
  }
  return *this;
}

bool Formula::is_ground() const {
  std::set<Var> vars;
  collect_vars(vars);
  return std::none_of(vars.begin(), vars.end(), [](const Var& v) { return v.is_meta(); });
}

void Formula::collect_vars(std::set<Var>& out) const {
  switch (kind()) {
    case Kind::Lit:
      literal().collect_vars(out);
      return;
    case Kind::And:
    case Kind::Or:
      left().collect_vars(out);
      right().collect_vars(out);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      std::set<Var> inner;
      body().collect_vars(inner);
      inner.erase(bound());
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::Lit:
      return literal().to_string();
    case Kind::And:
      return "(" + left().to_string() + " & " + right().to_string() + ")";
    case Kind::Or:
      return "(" + left().to_string() + " | " + right().to_string() + ")";
    case Kind::Forall:
      return "forall " + bound().name + ". " + body().to_string();
    case Kind::Exists:
      return "exists " + bound().name + ". " + body().to_string();
  }
  return {};
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Lit:
      return a.literal() == b.literal();
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return a.left() == b.left() && a.right() == b.right();
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Formula::Kind::Lit:
      return a.literal() < b.literal();
    case Formula::Kind::And:
    case Formula::Kind::Or:
      if (a.left() != b.left()) return a.left() < b.left();
      return a.right() < b.right();
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      if (!(a.bound() == b.bound())) return a.bound() < b.bound();
      return a.body() < b.body();
  }
  return false;
}

std::vector<Literal> literals_of(const Context& ctx) {
  std::vector<Literal> out;
  for (const auto& f : ctx) {
    if (!f.is_literal()) continue;
    if (std::find(out.begin(), out.end(), f.literal()) == out.end()) out.push_back(f.literal());
  }
  return out;
}

std::string to_string(const Context& ctx) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].to_string();
  }
  return s;
}

std::string to_string(const std::vector<Literal>& lits) {
  std::string s = "{";
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) s += ", ";
    s += lits[i].to_string();
  }
  return s + "}";
}

}  // namespace seqmod
