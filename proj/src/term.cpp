#include "seqmod/term.hpp"

#include "seqmod/errors.hpp"

#include <algorithm>
#include <sstream>

namespace seqmod {

std::string to_string(Sort sort) { return sort == Sort::Rational ? "rat" : "ind"; }

// ---------------------------------------------------------------------------
// LinearExpr

LinearExpr LinearExpr::variable(const Var& v, const Rational& coefficient) {
  LinearExpr e;
  e.add_term(v, coefficient);
  return e;
}

void LinearExpr::add_term(const Var& v, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = coefficients_.emplace(v, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) coefficients_.erase(it);
  }
}

Rational LinearExpr::coefficient(const Var& v) const {
  auto it = coefficients_.find(v);
  return it == coefficients_.end() ? Rational(0) : it->second;
}

LinearExpr LinearExpr::operator+(const LinearExpr& other) const {
  LinearExpr r = *this;
  r.constant_ += other.constant_;
  for (const auto& [v, c] : other.coefficients_) r.add_term(v, c);
  return r;
}

LinearExpr LinearExpr::operator-(const LinearExpr& other) const { return *this + (-other); }

LinearExpr LinearExpr::operator-() const { return *this * Rational(-1); }

LinearExpr LinearExpr::operator*(const Rational& factor) const {
  LinearExpr r;
  if (factor == 0) return r;
  r.constant_ = constant_ * factor;
  for (const auto& [v, c] : coefficients_) r.coefficients_.emplace(v, c * factor);
  return r;
}

LinearExpr LinearExpr::substitute(const Var& v, const LinearExpr& replacement) const {
  auto it = coefficients_.find(v);
  if (it == coefficients_.end()) return *this;
  Rational c = it->second;
  return without(v) + replacement * c;
}

LinearExpr LinearExpr::without(const Var& v) const {
  LinearExpr r = *this;
  r.coefficients_.erase(v);
  return r;
}

std::string LinearExpr::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const Rational& c, const std::string& name) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (name.empty()) {
      out << magnitude.get_str();
    } else {
      if (magnitude != 1) out << magnitude.get_str() << "*";
      out << name;
    }
    first = false;
  };
  for (const auto& [v, c] : coefficients_) emit(c, v.name);
  if (constant_ != 0 || first) emit(constant_, "");
  return out.str();
}

bool operator<(const LinearExpr& a, const LinearExpr& b) {
  auto ia = a.coefficients_.begin();
  auto ib = b.coefficients_.begin();
  for (; ia != a.coefficients_.end() && ib != b.coefficients_.end(); ++ia, ++ib) {
    if (ia->first < ib->first) return true;
    if (ib->first < ia->first) return false;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  if (ia != a.coefficients_.end()) return false;
  if (ib != b.coefficients_.end()) return true;
  return a.constant_ < b.constant_;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  Sort sort;
  Var var;
  Rational number;
  std::string symbol;
  std::vector<Term> args;
  LinearExpr linear;
};

Term Term::variable(Var v) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->sort = v.sort;
  node->var = std::move(v);
  return Term(std::move(node));
}

Term Term::eigen(std::string name, Sort sort) { return variable(Var::eigen(std::move(name), sort)); }
Term Term::meta(std::string name, Sort sort) { return variable(Var::meta(std::move(name), sort)); }
Term Term::bound(std::string name, Sort sort) { return variable(Var::bound(std::move(name), sort)); }

Term Term::number(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Number;
  node->sort = Sort::Rational;
  node->number = std::move(value);
  return Term(std::move(node));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  for (const auto& a : args) {
    if (a.sort() != Sort::Individual) {
      throw SortError("argument " + a.to_string() + " of " + symbol + " is not individual-sorted");
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::App;
  node->sort = Sort::Individual;
  node->symbol = std::move(symbol);
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::linear(const LinearExpr& expr) {
  if (expr.is_constant()) return number(expr.constant());
  if (expr.constant() == 0 && expr.coefficients().size() == 1 &&
      expr.coefficients().begin()->second == 1) {
    return variable(expr.coefficients().begin()->first);
  }
  for (const auto& [v, c] : expr.coefficients()) {
    if (v.sort != Sort::Rational) throw SortError("linear combination over individual variable " + v.name);
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Linear;
  node->sort = Sort::Rational;
  node->linear = expr;
  return Term(std::move(node));
}

Term::Kind Term::kind() const { return node_->kind; }
Sort Term::sort() const { return node_->sort; }
const Var& Term::var() const { return node_->var; }
const Rational& Term::number() const { return node_->number; }
const std::string& Term::symbol() const { return node_->symbol; }
const std::vector<Term>& Term::args() const { return node_->args; }

LinearExpr Term::as_linear() const {
  switch (kind()) {
    case Kind::Variable:
      if (sort() != Sort::Rational) break;
      return LinearExpr::variable(var());
    case Kind::Number:
      return LinearExpr(number());
    case Kind::Linear:
      return node_->linear;
    case Kind::App:
      break;
  }
  throw SortError("term " + to_string() + " is not rational-sorted");
}

bool Term::is_ground() const {
  switch (kind()) {
    case Kind::Variable:
      return !var().is_meta();
    case Kind::Number:
      return true;
    case Kind::App:
      return std::all_of(args().begin(), args().end(), [](const Term& t) { return t.is_ground(); });
    case Kind::Linear:
      for (const auto& [v, c] : node_->linear.coefficients()) {
        if (v.is_meta()) return false;
      }
      return true;
  }
  return true;
}

bool Term::mentions(const Var& v) const {
  switch (kind()) {
    case Kind::Variable:
      return var() == v;
    case Kind::Number:
      return false;
    case Kind::App:
      return std::any_of(args().begin(), args().end(), [&](const Term& t) { return t.mentions(v); });
    case Kind::Linear:
      return node_->linear.mentions(v);
  }
  return false;
}

std::size_t Term::depth() const {
  if (kind() != Kind::App || args().empty()) return 0;
  std::size_t d = 0;
  for (const auto& a : args()) d = std::max(d, a.depth());
  return d + 1;
}

void Term::collect_vars(std::set<Var>& out) const {
  switch (kind()) {
    case Kind::Variable:
      out.insert(var());
      break;
    case Kind::Number:
      break;
    case Kind::App:
      for (const auto& a : args()) a.collect_vars(out);
      break;
    case Kind::Linear:
      for (const auto& [v, c] : node_->linear.coefficients()) out.insert(v);
      break;
  }
}

Term Term::map_vars(const std::function<std::optional<Term>(const Var&)>& f) const {
  switch (kind()) {
    case Kind::Variable: {
      auto r = f(var());
      if (!r) return *this;
      if (r->sort() != sort()) {
        throw SortError("cannot replace " + var().name + " by " + r->to_string() + ": sort mismatch");
      }
      return *r;
    }
    case Kind::Number:
      return *this;
    case Kind::App: {
      std::vector<Term> mapped;
      mapped.reserve(args().size());
      bool changed = false;
      for (const auto& a : args()) {
        mapped.push_back(a.map_vars(f));
        changed = changed || !(mapped.back().node_ == a.node_);
      }
      if (!changed) return *this;
      return app(symbol(), std::move(mapped));
    }
    case Kind::Linear: {
      LinearExpr result(node_->linear.constant());
      bool changed = false;
      for (const auto& [v, c] : node_->linear.coefficients()) {
        auto r = f(v);
        if (r) {
          if (r->sort() != Sort::Rational) {
            throw SortError("cannot replace " + v.name + " by individual term " + r->to_string());
          }
          result = result + r->as_linear() * c;
          changed = true;
        } else {
          result = result + LinearExpr::variable(v, c);
        }
      }
      if (!changed) return *this;
      return linear(result);
    }
  }
  return *this;
}

Term Term::substitute(const Var& v, const Term& replacement) const {
  return map_vars([&](const Var& w) -> std::optional<Term> {
    if (w == v) return replacement;
    return std::nullopt;
  });
}

std::string Term::to_string() const {
  switch (kind()) {
    case Kind::Variable:
      return var().name;
    case Kind::Number:
      return number().get_str();
    case Kind::App: {
      if (args().empty()) return symbol();
      std::string s = symbol() + "(";
      for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) s += ", ";
        s += args()[i].to_string();
      }
      return s + ")";
    }
    case Kind::Linear:
      return node_->linear.to_string();
  }
  return {};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.sort() != b.sort()) return false;
  switch (a.kind()) {
    case Term::Kind::Variable:
      return a.var() == b.var();
    case Term::Kind::Number:
      return a.number() == b.number();
    case Term::Kind::App:
      return a.symbol() == b.symbol() && a.args() == b.args();
    case Term::Kind::Linear:
      return a.node_->linear == b.node_->linear;
  }
  return false;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.sort() != b.sort()) return a.sort() < b.sort();
  switch (a.kind()) {
    case Term::Kind::Variable:
      return a.var() < b.var();
    case Term::Kind::Number:
      return a.number() < b.number();
    case Term::Kind::App:
      if (a.symbol() != b.symbol()) return a.symbol() < b.symbol();
      return a.args() < b.args();
    case Term::Kind::Linear:
      return a.node_->linear < b.node_->linear;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Signature

void Signature::add_function(std::string name, std::size_t arity) {
  if (find_function(name) || find_predicate(name)) throw DomainError("symbol " + name + " declared twice");
  functions_.push_back({std::move(name), arity});
}

void Signature::add_predicate(std::string name, std::vector<Sort> arg_sorts) {
  if (find_function(name) || find_predicate(name)) throw DomainError("symbol " + name + " declared twice");
  predicates_.push_back({std::move(name), std::move(arg_sorts)});
}

const FunctionSymbol* Signature::find_function(const std::string& name) const {
  for (const auto& f : functions_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const PredicateSymbol* Signature::find_predicate(const std::string& name) const {
  for (const auto& p : predicates_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Term Signature::make_app(const std::string& name, std::vector<Term> args) const {
  const FunctionSymbol* f = find_function(name);
  if (!f) throw DomainError("undeclared function symbol " + name);
  if (f->arity != args.size()) {
    throw DomainError("function " + name + " expects " + std::to_string(f->arity) + " arguments, got " +
                      std::to_string(args.size()));
  }
  return Term::app(name, std::move(args));
}

}  // namespace seqmod
