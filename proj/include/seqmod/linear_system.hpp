#pragma once

#include "seqmod/term.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace seqmod {

enum class Cmp { Le, Lt, Eq };

/// expr ⋈ 0, the constant folded into expr.
struct LinAtom {
  LinearExpr expr;
  Cmp cmp = Cmp::Le;

  friend bool operator==(const LinAtom& a, const LinAtom& b) { return a.cmp == b.cmp && a.expr == b.expr; }
  friend bool operator<(const LinAtom& a, const LinAtom& b) {
    if (!(a.expr == b.expr)) return a.expr < b.expr;
    return a.cmp < b.cmp;
  }
};

/// Canonical scaling: equalities get leading coefficient 1, inequalities ±1.
LinAtom normalise_atom(const LinAtom& atom);
/// Truth value of a variable-free atom.
std::optional<bool> constant_truth(const LinAtom& atom);
bool evaluate(const LinAtom& atom, const std::map<Var, Rational>& values);
std::string render(const LinAtom& atom);

struct LraLimits {
  std::size_t max_disjuncts = 512;
  std::size_t max_atoms = 256;
};

/// A conjunction of atoms, sorted and free of duplicates and subsumed bounds.
using System = std::vector<LinAtom>;

/// Normalises a conjunction; nullopt when it is trivially false.
std::optional<System> make_system(std::vector<LinAtom> atoms, const LraLimits& limits = {});

/// Disjunction of systems. No disjuncts = FALSE, a single empty system = TRUE.
class Dnf {
 public:
  static Dnf truth();
  static Dnf falsity();
  static Dnf of_atom(const LinAtom& atom, const LraLimits& limits = {});
  static Dnf of_systems(std::vector<std::vector<LinAtom>> systems, const LraLimits& limits = {});

  const std::vector<System>& disjuncts() const { return disjuncts_; }
  bool is_true() const { return disjuncts_.size() == 1 && disjuncts_.front().empty(); }
  bool is_false() const { return disjuncts_.empty(); }
  std::set<Var> vars() const;
  bool mentions(const Var& v) const;

  friend bool operator==(const Dnf& a, const Dnf& b) { return a.disjuncts_ == b.disjuncts_; }

 private:
  std::vector<System> disjuncts_;
};

Dnf conjoin(const Dnf& a, const Dnf& b, const LraLimits& limits = {});
Dnf disjoin(const Dnf& a, const Dnf& b, const LraLimits& limits = {});
/// Conjunction that drops disjuncts without a rational solution.
Dnf conjoin_pruned(const Dnf& a, const Dnf& b, const LraLimits& limits = {});

/// ∃v. system, by Fourier–Motzkin (equalities are used for substitution first).
std::optional<System> fm_eliminate(const System& system, const Var& v, const LraLimits& limits = {});
Dnf fm_eliminate(const Dnf& f, const Var& v, const LraLimits& limits = {});
Dnf exists(const Dnf& f, const std::vector<Var>& vars, const LraLimits& limits = {});

bool system_sat(const System& system, const LraLimits& limits = {});
/// Some rational assignment of all mentioned variables satisfies some disjunct.
bool lra_sat(const Dnf& f, const LraLimits& limits = {});
/// Drops disjuncts without a rational solution.
Dnf prune(const Dnf& f, const LraLimits& limits = {});

Dnf negate(const Dnf& f, const LraLimits& limits = {});
Dnf forall(const Dnf& f, const std::vector<Var>& vars, const LraLimits& limits = {});
/// True for every rational assignment.
bool valid(const Dnf& f, const LraLimits& limits = {});

bool evaluate(const Dnf& f, const std::map<Var, Rational>& values);
Dnf substitute(const Dnf& f, const std::function<std::optional<LinearExpr>(const Var&)>& replace,
               const LraLimits& limits = {});
std::string render(const Dnf& f);

}  // namespace seqmod
