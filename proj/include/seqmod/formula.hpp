#pragma once

#include "seqmod/term.hpp"

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace seqmod {

enum class Relation { Le, Lt, Eq };

std::string to_string(Relation rel);

struct PredAtom {
  std::string symbol;
  std::vector<Term> args;

  friend bool operator==(const PredAtom& a, const PredAtom& b) {
    return a.symbol == b.symbol && a.args == b.args;
  }
  friend bool operator<(const PredAtom& a, const PredAtom& b) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol;
    return a.args < b.args;
  }
};

/// lhs ⋈ rhs over rational-sorted linear expressions.
struct ArithAtom {
  LinearExpr lhs;
  Relation rel = Relation::Le;
  LinearExpr rhs;

  friend bool operator==(const ArithAtom& a, const ArithAtom& b) {
    return a.rel == b.rel && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator<(const ArithAtom& a, const ArithAtom& b) {
    if (a.rel != b.rel) return a.rel < b.rel;
    if (!(a.lhs == b.lhs)) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  }
};

class Literal {
 public:
  static Literal pred(bool positive, std::string symbol, std::vector<Term> args = {});
  static Literal arith(LinearExpr lhs, Relation rel, LinearExpr rhs, bool positive = true);

  bool positive() const { return positive_; }
  bool is_arith() const { return std::holds_alternative<ArithAtom>(atom_); }
  const PredAtom& pred_atom() const { return std::get<PredAtom>(atom_); }
  const ArithAtom& arith_atom() const { return std::get<ArithAtom>(atom_); }

  Literal negated() const;
  Literal map_vars(const std::function<std::optional<Term>(const Var&)>& f) const;

  bool is_ground() const;
  void collect_vars(std::set<Var>& out) const;
  std::string to_string() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive_ == b.positive_ && a.atom_ == b.atom_;
  }
  friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
  friend bool operator<(const Literal& a, const Literal& b);

 private:
  Literal(bool positive, std::variant<PredAtom, ArithAtom> atom)
      : positive_(positive), atom_(std::move(atom)) {}

  bool positive_ = true;
  std::variant<PredAtom, ArithAtom> atom_;
};

/// Negation-normal-form formula; negation lives only inside literals.
class Formula {
 public:
  enum class Kind { Lit, And, Or, Forall, Exists };

  static Formula lit(Literal literal);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula forall(Var bound, Formula body);
  static Formula exists(Var bound, Formula body);

  Kind kind() const;
  bool is_literal() const { return kind() == Kind::Lit; }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  const Literal& literal() const;
  const Formula& left() const;
  const Formula& right() const;
  const Var& bound() const;
  const Formula& body() const;

  /// A[x:=t] for a bound variable x; occurrences under a binder for x are left alone.
  Formula substitute(const Var& bound, const Term& replacement) const;
  /// Replaces free eigen-/meta-variables.
  Formula map_vars(const std::function<std::optional<Term>(const Var&)>& f) const;

  bool is_ground() const;
  void collect_vars(std::set<Var>& out) const;  // free variables only
  std::size_t size() const;
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Multiset of formulas with a stable order.
using Context = std::vector<Formula>;

/// ⌊Γ⌋: the literal members of a context, without duplicates, in context order.
std::vector<Literal> literals_of(const Context& ctx);

std::string to_string(const Context& ctx);
std::string to_string(const std::vector<Literal>& lits);

}  // namespace seqmod
