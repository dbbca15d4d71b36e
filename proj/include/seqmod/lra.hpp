#pragma once

#include "seqmod/linear_system.hpp"
#include "seqmod/theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seqmod {

/// Quantifier-free formula over rational meta- and eigenvariables.
///
/// A constraint of domain d only mentions eigenvariables visible to the
/// newest meta-variable of d; eigenvariables that fall out of sight are
/// eliminated universally (they stand for arbitrary values).
struct PolyConstraint {
  Dnf dnf = Dnf::truth();

  friend bool operator==(const PolyConstraint& a, const PolyConstraint& b) { return a.dnf == b.dnf; }
};

struct LraConfig {
  LraLimits limits;
  std::vector<Rational> samples = default_rational_samples();
};

class LraTheory {
 public:
  using Constraint = PolyConstraint;

  struct Candidate {
    std::vector<Literal> used;
    Dnf closer;
  };

  class Stream {
   public:
    Stream(const LraTheory& theory, std::vector<Candidate> candidates, Domain d)
        : theory_(&theory), candidates_(std::move(candidates)), domain_(std::move(d)) {}
    std::optional<Closure<PolyConstraint>> pull(const PolyConstraint& input);

   private:
    const LraTheory* theory_;
    std::vector<Candidate> candidates_;
    Domain domain_;
    std::size_t next_ = 0;
  };

  explicit LraTheory(Signature sig, LraConfig cfg = {}) : sig_(std::move(sig)), cfg_(std::move(cfg)) {}

  std::string name() const { return "lra"; }
  const Signature& signature() const { return sig_; }
  const LraConfig& config() const { return cfg_; }

  PolyConstraint top(const Domain&) const { return {}; }
  PolyConstraint project(const PolyConstraint& sigma, const Domain& d_with_x) const;
  PolyConstraint lift(const PolyConstraint& sigma, const Domain&) const { return sigma; }
  std::optional<PolyConstraint> meet(const PolyConstraint& a, const PolyConstraint& b, const Domain& d) const;
  bool satisfiable(const PolyConstraint& sigma, const Domain& d) const;
  Stream consistency(const std::vector<Literal>& lits, const Domain& d) const {
    return Stream(*this, candidates(lits, d), d);
  }
  bool ground_valid(const std::vector<Literal>& lits) const;
  bool compatible(const Instantiation& rho, const PolyConstraint& sigma, const Domain& d) const;
  Term witness(const PolyConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const;
  std::string render(const PolyConstraint& sigma) const { return seqmod::render(sigma.dnf); }

  /// Closers of a literal set, in stream order: dual pairs, single
  /// arithmetic literals, then the disjunction of all of them.
  std::vector<Candidate> candidates(const std::vector<Literal>& lits, const Domain& d) const;
  /// The formula an arithmetic literal asserts; nullopt for predicate literals.
  std::optional<Dnf> literal_dnf(const Literal& l) const;
  /// Equalities making p(t…) and ¬p(u…) complementary; nullopt if they cannot be.
  std::optional<Dnf> pair_dnf(const Literal& a, const Literal& b) const;
  /// ∀-eliminates eigenvariables not visible to the newest meta-variable of d.
  Dnf hide_invisible(const Dnf& f, const Domain& d) const;
  /// Replaces meta-variables by the instantiation's values.
  Dnf instantiate(const Dnf& f, const Instantiation& rho) const;

 protected:
  Signature sig_;
  LraConfig cfg_;
};

}  // namespace seqmod
