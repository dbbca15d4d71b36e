#include "seqmod/frontend/problem.hpp"

#include "seqmod/errors.hpp"
#include "seqmod/frontend/sexpr.hpp"

#include <map>
#include <set>

namespace seqmod {

GoalFormula GoalFormula::atom(Literal positive_literal) {
  GoalFormula f;
  f.kind_ = Kind::Atom;
  f.atom_ = std::move(positive_literal);
  return f;
}

GoalFormula GoalFormula::negation(GoalFormula a) {
  GoalFormula f;
  f.kind_ = Kind::Not;
  f.args_.push_back(std::move(a));
  return f;
}

GoalFormula GoalFormula::binary(Kind kind, GoalFormula a, GoalFormula b) {
  GoalFormula f;
  f.kind_ = kind;
  f.args_.push_back(std::move(a));
  f.args_.push_back(std::move(b));
  return f;
}

GoalFormula GoalFormula::quantifier(Kind kind, Var bound, GoalFormula body) {
  GoalFormula f;
  f.kind_ = kind;
  f.bound_ = std::move(bound);
  f.args_.push_back(std::move(body));
  return f;
}

bool GoalFormula::uses_arithmetic() const {
  if (kind_ == Kind::Atom) {
    if (atom_->is_arith()) return true;
    for (const auto& t : atom_->pred_atom().args) {
      if (t.kind() == Term::Kind::Number || t.kind() == Term::Kind::Linear) return true;
    }
    return false;
  }
  for (const auto& a : args_) {
    if (a.uses_arithmetic()) return true;
  }
  return false;
}

bool operator==(const Problem& a, const Problem& b) {
  const auto& fa = a.signature.functions();
  const auto& fb = b.signature.functions();
  const auto& pa = a.signature.predicates();
  const auto& pb = b.signature.predicates();
  if (fa.size() != fb.size() || pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i].name != fb[i].name || fa[i].arity != fb[i].arity) return false;
  }
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i].name != pb[i].name || pa[i].arg_sorts != pb[i].arg_sorts) return false;
  }
  return a.constants == b.constants && a.goal == b.goal;
}

namespace {

const std::set<std::string> kReserved = {"and", "or",  "not", "=>", "implies", "iff", "forall", "exists",
                                         "+",   "-",   "*",   "<=", "<",       "=",   ">=",     ">",
                                         "rat", "ind", "goal"};
const std::set<std::string> kArith = {"+", "-", "*", "<=", "<", "=", ">=", ">"};
const std::set<std::string> kCompare = {"<=", "<", "=", ">=", ">"};

[[noreturn]] void fail(const SExpr& at, const std::string& message) { throw ParseError(message, at.line, at.column); }

bool is_identifier(const std::string& s) {
  if (s.empty() || parse_rational(s) || kReserved.count(s)) return false;
  char c = s.front();
  return c != '?' && c != '^' && c != '_' && c != '-' && c != '+' && !(c >= '0' && c <= '9');
}

class Parser {
 public:
  Problem run(const std::vector<SExpr>& top) {
    std::optional<GoalFormula> goal;
    for (const auto& e : top) {
      std::string h = e.head();
      if (h == "declare-pred") {
        declare_pred(e);
      } else if (h == "declare-fun") {
        declare_fun(e);
      } else if (h == "declare-const") {
        declare_const(e);
      } else if (h == "goal") {
        if (goal) fail(e, "more than one goal");
        if (e.items.size() != 2) fail(e, "goal takes one formula");
        goal = formula(e.items[1]);
      } else {
        fail(e, "expected a declaration or (goal ...)");
      }
    }
    if (!goal) throw ParseError("missing (goal ...)", 1, 1);
    problem_.goal = std::move(*goal);
    return std::move(problem_);
  }

 private:
  std::string fresh_symbol(const SExpr& e) {
    if (e.is_list || !is_identifier(e.atom)) fail(e, "expected an identifier");
    if (declared_.count(e.atom)) fail(e, "symbol " + e.atom + " declared twice");
    declared_.insert(e.atom);
    return e.atom;
  }

  Sort sort_name(const SExpr& e) {
    if (e.is_atom("rat")) return Sort::Rational;
    if (e.is_atom("ind")) return Sort::Individual;
    fail(e, "expected a sort (ind or rat)");
  }

  static std::optional<std::size_t> count(const SExpr& e) {
    if (e.is_list || e.atom.empty()) return std::nullopt;
    for (char c : e.atom) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    return std::stoul(e.atom);
  }

  void declare_pred(const SExpr& e) {
    if (e.items.size() < 2) fail(e, "declare-pred needs a name");
    std::string name = fresh_symbol(e.items[1]);
    std::vector<Sort> sorts;
    if (e.items.size() == 3 && count(e.items[2])) {
      sorts.assign(*count(e.items[2]), Sort::Individual);
    } else {
      for (std::size_t i = 2; i < e.items.size(); ++i) sorts.push_back(sort_name(e.items[i]));
    }
    problem_.signature.add_predicate(name, sorts);
  }

  void declare_fun(const SExpr& e) {
    if (e.items.size() != 3 || !count(e.items[2])) fail(e, "expected (declare-fun name arity)");
    problem_.signature.add_function(fresh_symbol(e.items[1]), *count(e.items[2]));
  }

  void declare_const(const SExpr& e) {
    if (e.items.size() != 2 && e.items.size() != 3) fail(e, "expected (declare-const name [sort])");
    std::string name = fresh_symbol(e.items[1]);
    Sort sort = e.items.size() == 3 ? sort_name(e.items[2]) : Sort::Individual;
    problem_.constants.push_back(Var::eigen(name, sort));
  }

  const Var* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    for (const auto& c : problem_.constants) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  // Whether `name` occurs in a rational position in e (respecting shadowing).
  bool rational_use(const std::string& name, const SExpr& e, bool arith) const {
    if (e.is_atom()) return arith && e.atom == name;
    std::string h = e.head();
    if (h == "forall" || h == "exists") {
      if (e.items.size() != 3) return false;
      for (const auto& b : binder_items(e.items[1])) {
        const SExpr& n = b.is_list && !b.items.empty() ? b.items[0] : b;
        if (n.is_atom(name)) return false;
      }
      return rational_use(name, e.items[2], false);
    }
    if (kArith.count(h)) {
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        if (rational_use(name, e.items[i], true)) return true;
      }
      return false;
    }
    const PredicateSymbol* p = problem_.signature.find_predicate(h);
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      bool rat = p && i - 1 < p->arity() && p->arg_sorts[i - 1] == Sort::Rational;
      if (rational_use(name, e.items[i], rat)) return true;
    }
    return false;
  }

  static std::vector<SExpr> binder_items(const SExpr& b) {
    if (b.is_atom()) return {b};
    return b.items;
  }

  GoalFormula formula(const SExpr& e) {
    if (e.is_atom()) return predicate(e, e.atom, {});
    if (e.items.empty()) fail(e, "empty formula");
    std::string h = e.head();
    if (h.empty()) fail(e, "expected a connective or predicate");
    if (h == "and" || h == "or") {
      if (e.items.size() < 2) fail(e, h + " needs at least one argument");
      auto kind = h == "and" ? GoalFormula::Kind::And : GoalFormula::Kind::Or;
      GoalFormula acc = formula(e.items.back());
      for (std::size_t i = e.items.size() - 1; i-- > 1;) acc = GoalFormula::binary(kind, formula(e.items[i]), acc);
      return acc;
    }
    if (h == "not") {
      if (e.items.size() != 2) fail(e, "not takes one argument");
      return GoalFormula::negation(formula(e.items[1]));
    }
    if (h == "=>" || h == "implies" || h == "iff") {
      if (e.items.size() != 3) fail(e, h + " takes two arguments");
      auto kind = h == "iff" ? GoalFormula::Kind::Iff : GoalFormula::Kind::Implies;
      return GoalFormula::binary(kind, formula(e.items[1]), formula(e.items[2]));
    }
    if (h == "forall" || h == "exists") return quantifier(e, h == "forall");
    if (kCompare.count(h)) return comparison(e, h);
    return predicate(e, h, {e.items.begin() + 1, e.items.end()});
  }

  GoalFormula quantifier(const SExpr& e, bool universal) {
    if (e.items.size() != 3) fail(e, "expected (" + e.head() + " vars body)");
    auto items = binder_items(e.items[1]);
    if (items.empty()) fail(e.items[1], "no bound variables");
    std::vector<Var> vars;
    for (const auto& b : items) {
      const SExpr& n = b.is_list ? (b.items.size() == 2 ? b.items[0] : b) : b;
      if (n.is_list || !is_identifier(n.atom)) fail(b, "expected a variable or (variable sort)");
      Sort s = b.is_list ? sort_name(b.items[1])
                         : (rational_use(n.atom, e.items[2], false) ? Sort::Rational : Sort::Individual);
      vars.push_back(Var::bound(n.atom, s));
      scope_.push_back(vars.back());
    }
    GoalFormula body = formula(e.items[2]);
    scope_.resize(scope_.size() - vars.size());
    auto kind = universal ? GoalFormula::Kind::Forall : GoalFormula::Kind::Exists;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = GoalFormula::quantifier(kind, *it, std::move(body));
    return body;
  }

  GoalFormula comparison(const SExpr& e, const std::string& op) {
    if (e.items.size() < 3) fail(e, op + " needs at least two arguments");
    std::vector<LinearExpr> sides;
    for (std::size_t i = 1; i < e.items.size(); ++i) sides.push_back(linear(e.items[i]));
    std::vector<GoalFormula> atoms;
    for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
      const LinearExpr& a = sides[i];
      const LinearExpr& b = sides[i + 1];
      if (op == "<=") atoms.push_back(GoalFormula::atom(Literal::arith(a, Relation::Le, b)));
      if (op == "<") atoms.push_back(GoalFormula::atom(Literal::arith(a, Relation::Lt, b)));
      if (op == "=") atoms.push_back(GoalFormula::atom(Literal::arith(a, Relation::Eq, b)));
      if (op == ">=") atoms.push_back(GoalFormula::atom(Literal::arith(b, Relation::Le, a)));
      if (op == ">") atoms.push_back(GoalFormula::atom(Literal::arith(b, Relation::Lt, a)));
    }
    GoalFormula acc = atoms.back();
    for (std::size_t i = atoms.size() - 1; i-- > 0;) {
      acc = GoalFormula::binary(GoalFormula::Kind::And, atoms[i], acc);
    }
    return acc;
  }

  GoalFormula predicate(const SExpr& at, const std::string& name, const std::vector<SExpr>& args) {
    const PredicateSymbol* p = problem_.signature.find_predicate(name);
    if (!p) fail(at, "undeclared predicate " + name);
    if (p->arity() != args.size()) {
      fail(at, "predicate " + name + " expects " + std::to_string(p->arity()) + " arguments, got " +
                   std::to_string(args.size()));
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < args.size(); ++i) {
      Term t = p->arg_sorts[i] == Sort::Rational ? Term::linear(linear(args[i])) : individual(args[i]);
      terms.push_back(std::move(t));
    }
    return GoalFormula::atom(Literal::pred(true, name, std::move(terms)));
  }

  Term individual(const SExpr& e) {
    if (e.is_atom()) {
      if (const Var* v = lookup(e.atom)) {
        if (v->sort != Sort::Individual) fail(e, e.atom + " is rational, expected an individual term");
        return Term::variable(*v);
      }
      const FunctionSymbol* f = problem_.signature.find_function(e.atom);
      if (!f) fail(e, "undeclared symbol " + e.atom);
      if (f->arity != 0) fail(e, "function " + e.atom + " expects " + std::to_string(f->arity) + " arguments");
      return Term::app(e.atom);
    }
    std::string h = e.head();
    if (kArith.count(h)) fail(e, "arithmetic where an individual term is expected");
    const FunctionSymbol* f = problem_.signature.find_function(h);
    if (!f) fail(e, "undeclared function " + h);
    if (f->arity != e.items.size() - 1) {
      fail(e, "function " + h + " expects " + std::to_string(f->arity) + " arguments, got " +
                  std::to_string(e.items.size() - 1));
    }
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(individual(e.items[i]));
    return Term::app(h, std::move(args));
  }

  LinearExpr linear(const SExpr& e) {
    if (e.is_atom()) {
      if (auto q = parse_rational(e.atom)) return LinearExpr(*q);
      const Var* v = lookup(e.atom);
      if (!v) fail(e, "undeclared symbol " + e.atom);
      if (v->sort != Sort::Rational) fail(e, e.atom + " is an individual, expected a rational term");
      return LinearExpr::variable(*v);
    }
    std::string h = e.head();
    if (h == "+") {
      LinearExpr sum;
      for (std::size_t i = 1; i < e.items.size(); ++i) sum = sum + linear(e.items[i]);
      return sum;
    }
    if (h == "-") {
      if (e.items.size() < 2) fail(e, "- needs an argument");
      if (e.items.size() == 2) return -linear(e.items[1]);
      LinearExpr acc = linear(e.items[1]);
      for (std::size_t i = 2; i < e.items.size(); ++i) acc = acc - linear(e.items[i]);
      return acc;
    }
    if (h == "*") {
      std::optional<LinearExpr> symbolic;
      Rational factor = 1;
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        LinearExpr part = linear(e.items[i]);
        if (part.is_constant()) {
          factor *= part.constant();
        } else if (symbolic) {
          fail(e, "non-linear product");
        } else {
          symbolic = part;
        }
      }
      return symbolic ? *symbolic * factor : LinearExpr(factor);
    }
    fail(e, "expected a rational term");
  }

  Problem problem_;
  std::set<std::string> declared_;
  std::vector<Var> scope_;
};

std::string print_linear(const LinearExpr& e) {
  std::vector<std::string> parts;
  for (const auto& [v, c] : e.coefficients()) {
    parts.push_back(c == 1 ? v.name : "(* " + to_string(c) + " " + v.name + ")");
  }
  if (e.constant() != 0 || parts.empty()) parts.push_back(to_string(e.constant()));
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.var().name;
    case Term::Kind::Number:
      return to_string(t.number());
    case Term::Kind::Linear:
      return print_linear(t.as_linear());
    case Term::Kind::App: {
      if (t.args().empty()) return t.symbol();
      std::string out = "(" + t.symbol();
      for (const auto& a : t.args()) out += " " + print_term(a);
      return out + ")";
    }
  }
  return "?";
}

std::string print_atom(const Literal& l) {
  if (l.is_arith()) {
    const auto& a = l.arith_atom();
    const char* op = a.rel == Relation::Le ? "<=" : a.rel == Relation::Lt ? "<" : "=";
    return std::string("(") + op + " " + print_linear(a.lhs) + " " + print_linear(a.rhs) + ")";
  }
  const auto& p = l.pred_atom();
  if (p.args.empty()) return p.symbol;
  std::string out = "(" + p.symbol;
  for (const auto& t : p.args) out += " " + print_term(t);
  return out + ")";
}

Formula nnf(const GoalFormula& f, bool positive) {
  using K = GoalFormula::Kind;
  const auto& a = f.args();
  switch (f.kind()) {
    case K::Atom: {
      const Literal& l = f.literal();
      if (positive) return Formula::lit(l);
      if (!l.is_arith()) return Formula::lit(l.negated());
      const auto& at = l.arith_atom();
      switch (at.rel) {
        case Relation::Le:
          return Formula::lit(Literal::arith(at.rhs, Relation::Lt, at.lhs));
        case Relation::Lt:
          return Formula::lit(Literal::arith(at.rhs, Relation::Le, at.lhs));
        case Relation::Eq:
          return Formula::disj(Formula::lit(Literal::arith(at.lhs, Relation::Lt, at.rhs)),
                               Formula::lit(Literal::arith(at.rhs, Relation::Lt, at.lhs)));
      }
      break;
    }
    case K::Not:
      return nnf(a[0], !positive);
    case K::And:
      return positive ? Formula::conj(nnf(a[0], true), nnf(a[1], true))
                      : Formula::disj(nnf(a[0], false), nnf(a[1], false));
    case K::Or:
      return positive ? Formula::disj(nnf(a[0], true), nnf(a[1], true))
                      : Formula::conj(nnf(a[0], false), nnf(a[1], false));
    case K::Implies:
      return positive ? Formula::disj(nnf(a[0], false), nnf(a[1], true))
                      : Formula::conj(nnf(a[0], true), nnf(a[1], false));
    case K::Iff:
      if (positive) {
        return Formula::conj(Formula::disj(nnf(a[0], false), nnf(a[1], true)),
                             Formula::disj(nnf(a[1], false), nnf(a[0], true)));
      }
      return Formula::disj(Formula::conj(nnf(a[0], true), nnf(a[1], false)),
                           Formula::conj(nnf(a[0], false), nnf(a[1], true)));
    case K::Forall:
      return positive ? Formula::forall(f.bound(), nnf(a[0], true)) : Formula::exists(f.bound(), nnf(a[0], false));
    case K::Exists:
      return positive ? Formula::exists(f.bound(), nnf(a[0], true)) : Formula::forall(f.bound(), nnf(a[0], false));
  }
  throw PreconditionError("malformed goal formula");
}

}  // namespace

Problem parse_problem(std::string_view text) {
  try {
    return Parser().run(parse_sexprs(text));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

std::string print_formula(const GoalFormula& f) {
  using K = GoalFormula::Kind;
  const auto& a = f.args();
  switch (f.kind()) {
    case K::Atom:
      return print_atom(f.literal());
    case K::Not:
      return "(not " + print_formula(a[0]) + ")";
    case K::And:
      return "(and " + print_formula(a[0]) + " " + print_formula(a[1]) + ")";
    case K::Or:
      return "(or " + print_formula(a[0]) + " " + print_formula(a[1]) + ")";
    case K::Implies:
      return "(=> " + print_formula(a[0]) + " " + print_formula(a[1]) + ")";
    case K::Iff:
      return "(iff " + print_formula(a[0]) + " " + print_formula(a[1]) + ")";
    case K::Forall:
    case K::Exists: {
      std::string q = f.kind() == K::Forall ? "forall" : "exists";
      std::string v = f.bound().sort == Sort::Rational ? "((" + f.bound().name + " rat))" : f.bound().name;
      return "(" + q + " " + v + " " + print_formula(a[0]) + ")";
    }
  }
  return "?";
}

std::string print_problem(const Problem& p) {
  std::string out;
  for (const auto& pred : p.signature.predicates()) {
    bool all_ind = true;
    for (Sort s : pred.arg_sorts) all_ind = all_ind && s == Sort::Individual;
    out += "(declare-pred " + pred.name;
    if (all_ind) {
      out += " " + std::to_string(pred.arity());
    } else {
      for (Sort s : pred.arg_sorts) out += " " + to_string(s);
    }
    out += ")\n";
  }
  for (const auto& f : p.signature.functions()) {
    out += "(declare-fun " + f.name + " " + std::to_string(f.arity) + ")\n";
  }
  for (const auto& c : p.constants) {
    out += "(declare-const " + c.name + (c.sort == Sort::Rational ? " rat" : "") + ")\n";
  }
  return out + "(goal " + print_formula(p.goal) + ")\n";
}

Formula to_nnf(const GoalFormula& f) { return nnf(f, true); }

Domain initial_domain(const Problem& p) {
  std::vector<Var> eigens = p.constants;
  bool has_individual = false;
  for (const auto& c : p.constants) has_individual = has_individual || c.sort == Sort::Individual;
  for (const auto& f : p.signature.functions()) has_individual = has_individual || f.arity == 0;
  if (!has_individual) {
    std::set<std::string> taken;
    for (const auto& c : p.constants) taken.insert(c.name);
    for (const auto& f : p.signature.functions()) taken.insert(f.name);
    for (const auto& q : p.signature.predicates()) taken.insert(q.name);
    std::string name = "c0";
    for (int i = 1; taken.count(name); ++i) name = "c" + std::to_string(i);
    eigens.push_back(Var::eigen(name, Sort::Individual));
  }
  return Domain::initial(std::move(eigens));
}

}  // namespace seqmod
