#pragma once

#include "seqmod/fol.hpp"
#include "seqmod/ground_enum.hpp"
#include "seqmod/lra.hpp"

namespace seqmod::mutants {

/// Projection that also forgets the binding of the oldest meta-variable.
class FolProjWrongEntry : public FolTheory {
 public:
  using FolTheory::FolTheory;
  std::string name() const { return "fol-proj-wrong-entry"; }
  SubstConstraint project(const SubstConstraint& sigma, const Domain& d_with_x) const;
};

/// Meet that returns its left argument.
class FolMeetDropsRight : public FolTheory {
 public:
  using FolTheory::FolTheory;
  std::string name() const { return "fol-meet-drops-right"; }
  std::optional<SubstConstraint> meet(const SubstConstraint& a, const SubstConstraint& b, const Domain& d) const;
};

/// Stream that unifies from scratch instead of extending its input.
class FolStreamIgnoresInput : public FolTheory {
 public:
  class Stream {
   public:
    explicit Stream(FolTheory::Stream inner) : inner_(std::move(inner)) {}
    std::optional<Closure<SubstConstraint>> pull(const SubstConstraint&) { return inner_.pull(SubstConstraint{}); }

   private:
    FolTheory::Stream inner_;
  };

  using FolTheory::FolTheory;
  std::string name() const { return "fol-stream-ignores-input"; }
  Stream consistency(const std::vector<Literal>& lits, const Domain& d) const {
    return Stream(FolTheory::consistency(lits, d));
  }
};

/// Witness builder that always answers the first constant.
class EnumWitnessDefault : public EnumTheory {
 public:
  using EnumTheory::EnumTheory;
  std::string name() const { return "enum-witness-default"; }
  Term witness(const GroundConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const;
};

/// Projection that deletes the atoms mentioning the variable instead of eliminating it.
class LraProjDropsAtoms : public LraTheory {
 public:
  using LraTheory::LraTheory;
  std::string name() const { return "lra-proj-drops-atoms"; }
  PolyConstraint project(const PolyConstraint& sigma, const Domain& d_with_x) const;
};

/// Lift that adds X <= 0 for the new meta-variable X.
class LraLiftStrengthens : public LraTheory {
 public:
  using LraTheory::LraTheory;
  std::string name() const { return "lra-lift-strengthens"; }
  PolyConstraint lift(const PolyConstraint& sigma, const Domain& d_with_x) const;
};

}  // namespace seqmod::mutants
