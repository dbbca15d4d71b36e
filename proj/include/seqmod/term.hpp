#pragma once

#include "seqmod/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace seqmod {

enum class Sort { Individual, Rational };

std::string to_string(Sort sort);

/// Bound variables only live under a binder; eigen- and meta-variables are
/// declared in a Domain.
enum class VarKind { Bound, Eigen, Meta };

struct Var {
  VarKind kind = VarKind::Bound;
  std::string name;
  Sort sort = Sort::Individual;

  static Var bound(std::string name, Sort sort) { return {VarKind::Bound, std::move(name), sort}; }
  static Var eigen(std::string name, Sort sort) { return {VarKind::Eigen, std::move(name), sort}; }
  static Var meta(std::string name, Sort sort) { return {VarKind::Meta, std::move(name), sort}; }

  bool is_meta() const { return kind == VarKind::Meta; }
  bool is_eigen() const { return kind == VarKind::Eigen; }

  friend bool operator==(const Var& a, const Var& b) {
    return a.kind == b.kind && a.name == b.name && a.sort == b.sort;
  }
  friend bool operator<(const Var& a, const Var& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.sort < b.sort;
  }
};

/// Σ cᵢ·vᵢ + c over rational-sorted variables. Zero coefficients are never stored.
class LinearExpr {
 public:
  LinearExpr() = default;
  explicit LinearExpr(Rational constant) : constant_(std::move(constant)) {}

  static LinearExpr variable(const Var& v, const Rational& coefficient = 1);

  const std::map<Var, Rational>& coefficients() const { return coefficients_; }
  const Rational& constant() const { return constant_; }
  bool is_constant() const { return coefficients_.empty(); }
  Rational coefficient(const Var& v) const;
  bool mentions(const Var& v) const { return coefficients_.count(v) != 0; }

  LinearExpr operator+(const LinearExpr& other) const;
  LinearExpr operator-(const LinearExpr& other) const;
  LinearExpr operator-() const;
  LinearExpr operator*(const Rational& factor) const;

  /// Replaces `v` by `replacement` (coefficient-scaled).
  LinearExpr substitute(const Var& v, const LinearExpr& replacement) const;
  /// Drops `v` and returns the remainder; `coefficient(v)` is what was dropped.
  LinearExpr without(const Var& v) const;

  std::string to_string() const;

  friend bool operator==(const LinearExpr& a, const LinearExpr& b) {
    return a.constant_ == b.constant_ && a.coefficients_ == b.coefficients_;
  }
  friend bool operator<(const LinearExpr& a, const LinearExpr& b);

 private:
  void add_term(const Var& v, const Rational& coefficient);

  std::map<Var, Rational> coefficients_;
  Rational constant_ = 0;
};

/// Immutable, structurally compared first-order term. Rational-sorted terms
/// are kept in a canonical form: a lone variable with coefficient 1 is a
/// Variable, a variable-free expression is a Number, anything else Linear.
class Term {
 public:
  enum class Kind { Variable, Number, App, Linear };

  static Term variable(Var v);
  static Term eigen(std::string name, Sort sort = Sort::Individual);
  static Term meta(std::string name, Sort sort = Sort::Individual);
  static Term bound(std::string name, Sort sort = Sort::Individual);
  static Term number(Rational value);
  /// Individual-sorted application; arity is checked by Signature::make_app.
  static Term app(std::string symbol, std::vector<Term> args = {});
  static Term linear(const LinearExpr& expr);

  Kind kind() const;
  Sort sort() const;

  const Var& var() const;
  const Rational& number() const;
  const std::string& symbol() const;
  const std::vector<Term>& args() const;

  /// Linear view of a rational-sorted term.
  LinearExpr as_linear() const;

  bool is_ground() const;  // no meta-variables
  bool mentions(const Var& v) const;
  std::size_t depth() const;
  void collect_vars(std::set<Var>& out) const;

  /// Rebuilds the term, replacing each variable for which `f` returns a term.
  Term map_vars(const std::function<std::optional<Term>(const Var&)>& f) const;
  Term substitute(const Var& v, const Term& replacement) const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FunctionSymbol {
  std::string name;
  std::size_t arity = 0;
};

struct PredicateSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  std::size_t arity() const { return arg_sorts.size(); }
};

/// Function and predicate declarations of a problem, in declaration order.
/// Functions are individual-sorted in all arguments and in their result.
class Signature {
 public:
  void add_function(std::string name, std::size_t arity);
  void add_predicate(std::string name, std::vector<Sort> arg_sorts);

  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const FunctionSymbol* find_function(const std::string& name) const;
  const PredicateSymbol* find_predicate(const std::string& name) const;

  /// Builds f(args) after checking arity and argument sorts.
  Term make_app(const std::string& name, std::vector<Term> args) const;

 private:
  std::vector<FunctionSymbol> functions_;
  std::vector<PredicateSymbol> predicates_;
};

}  // namespace seqmod
