#pragma once

#include "seqmod/theory.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seqmod {

/// ⊥ or an idempotent substitution over the domain's meta-variables.
///
/// Ranges may mention meta-variables that are no longer declared (they were
/// projected away while still occurring in other bindings); these are
/// renamed canonically to `_o1`, `_o2`, ... and act as existentially
/// quantified placeholders. `limit` records, for such placeholders and for
/// unbound declared meta-variables whose dependencies were tightened by a
/// binding, how many eigenvariables of the domain they may still depend on.
struct SubstConstraint {
  bool bottom = false;
  std::map<std::string, Term> bind;
  std::map<std::string, std::size_t> limit;

  static SubstConstraint bot() { return SubstConstraint{true, {}, {}}; }

  friend bool operator==(const SubstConstraint& a, const SubstConstraint& b) {
    return a.bottom == b.bottom && a.bind == b.bind && a.limit == b.limit;
  }
};

/// Brings a constraint into the canonical form of domain `d`.
SubstConstraint normalise(SubstConstraint sigma, const Domain& d);

/// Most general unifier of all pairs, extending `base`, respecting the occurs
/// check and eigenvariable dependencies. ⊥ when none exists.
SubstConstraint mgu(const std::vector<std::pair<Term, Term>>& pairs, const Domain& d,
                    const SubstConstraint& base = {});

/// Applies the bindings (not the limits) to a term.
Term apply(const SubstConstraint& sigma, const Term& t);
Literal apply(const SubstConstraint& sigma, const Literal& l);

/// Ground validity of the pure first-order case: a complementary pair.
bool complementary_pair(const std::vector<Literal>& lits);

class FolTheory {
 public:
  using Constraint = SubstConstraint;

  class Stream {
   public:
    Stream(std::vector<Literal> lits, Domain d);
    std::optional<Closure<SubstConstraint>> pull(const SubstConstraint& input);

   private:
    std::vector<Literal> lits_;
    Domain domain_;
    std::size_t i_ = 0;
    std::size_t j_ = 1;
  };

  explicit FolTheory(Signature sig) : sig_(std::move(sig)) {}

  std::string name() const { return "fol"; }
  const Signature& signature() const { return sig_; }

  SubstConstraint top(const Domain&) const { return {}; }
  SubstConstraint project(const SubstConstraint& sigma, const Domain& d_with_x) const;
  SubstConstraint lift(const SubstConstraint& sigma, const Domain& d_with_x) const;
  std::optional<SubstConstraint> meet(const SubstConstraint& a, const SubstConstraint& b, const Domain& d) const;
  bool satisfiable(const SubstConstraint& sigma, const Domain&) const { return !sigma.bottom; }
  Stream consistency(const std::vector<Literal>& lits, const Domain& d) const { return Stream(lits, d); }
  bool ground_valid(const std::vector<Literal>& lits) const;
  bool compatible(const Instantiation& rho, const SubstConstraint& sigma, const Domain& d) const;
  Term witness(const SubstConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const;
  std::string render(const SubstConstraint& sigma) const;

 protected:
  /// First authorised ground term of the given sort over the first `limit` eigenvariables.
  Term default_term(const Domain& d, Sort sort, std::size_t limit) const;

  Signature sig_;
};

}  // namespace seqmod
