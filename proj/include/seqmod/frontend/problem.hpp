#pragma once

#include "seqmod/domain.hpp"
#include "seqmod/formula.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqmod {

/// Goal formula as written: negation anywhere, implication and equivalence allowed.
class GoalFormula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff, Forall, Exists };

  static GoalFormula atom(Literal positive_literal);
  static GoalFormula negation(GoalFormula f);
  static GoalFormula binary(Kind kind, GoalFormula a, GoalFormula b);
  static GoalFormula quantifier(Kind kind, Var bound, GoalFormula body);

  Kind kind() const { return kind_; }
  const Literal& literal() const { return *atom_; }
  const std::vector<GoalFormula>& args() const { return args_; }
  const Var& bound() const { return bound_; }

  bool uses_arithmetic() const;

  friend bool operator==(const GoalFormula& a, const GoalFormula& b) {
    return a.kind_ == b.kind_ && a.atom_ == b.atom_ && a.args_ == b.args_ && a.bound_ == b.bound_;
  }

 private:
  Kind kind_ = Kind::Atom;
  std::optional<Literal> atom_;
  std::vector<GoalFormula> args_;
  Var bound_;
};

struct Problem {
  Signature signature;
  std::vector<Var> constants;  // declared constants, as eigenvariables
  GoalFormula goal;

  friend bool operator==(const Problem& a, const Problem& b);
};

/// Parses declarations and a single `(goal F)`; throws ParseError with a position.
Problem parse_problem(std::string_view text);

std::string print_formula(const GoalFormula& f);
std::string print_problem(const Problem& p);

/// Classical negation normal form; arithmetic literals come out positive.
Formula to_nnf(const GoalFormula& f);

/// Φ₀: the declared constants, plus a fresh individual constant when the
/// signature offers no individual ground term.
Domain initial_domain(const Problem& p);

}  // namespace seqmod
