#include "seqmod/harness/mutants.hpp"

namespace seqmod::mutants {

SubstConstraint FolProjWrongEntry::project(const SubstConstraint& sigma, const Domain& d_with_x) const {
  SubstConstraint s = sigma;
  if (!s.bottom) s.bind.erase(d_with_x.metas().front().var.name);
  return FolTheory::project(s, d_with_x);
}

std::optional<SubstConstraint> FolMeetDropsRight::meet(const SubstConstraint& a, const SubstConstraint&,
                                                       const Domain&) const {
  if (a.bottom) return std::nullopt;
  return a;
}

Term EnumWitnessDefault::witness(const GroundConstraint&, const Domain& d_with_x, const Instantiation&) const {
  return enumerate_ground_terms(sig_, d_with_x, d_with_x.last_meta(), 0, cfg_.samples).front();
}

PolyConstraint LraProjDropsAtoms::project(const PolyConstraint& sigma, const Domain& d_with_x) const {
  const Var& x = d_with_x.last_meta();
  std::vector<std::vector<LinAtom>> systems;
  for (const auto& s : sigma.dnf.disjuncts()) {
    std::vector<LinAtom> kept;
    for (const auto& a : s) {
      if (!a.expr.mentions(x)) kept.push_back(a);
    }
    systems.push_back(std::move(kept));
  }
  Dnf f = Dnf::of_systems(std::move(systems), cfg_.limits);
  return PolyConstraint{hide_invisible(f, d_with_x.without_last_meta())};
}

PolyConstraint LraLiftStrengthens::lift(const PolyConstraint& sigma, const Domain& d_with_x) const {
  Dnf bound = Dnf::of_atom(LinAtom{LinearExpr::variable(d_with_x.last_meta()), Cmp::Le}, cfg_.limits);
  return PolyConstraint{conjoin(sigma.dnf, bound, cfg_.limits)};
}

}  // namespace seqmod::mutants
