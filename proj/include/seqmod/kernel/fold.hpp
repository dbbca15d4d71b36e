#pragma once

#include "seqmod/errors.hpp"
#include "seqmod/kernel/check.hpp"
#include "seqmod/kernel/proof.hpp"
#include "seqmod/theory.hpp"

#include <string>
#include <vector>

namespace seqmod {

/// Canonical instantiation of a satisfiable constraint: project down to the
/// domain without meta-variables, then witness each meta-variable in order.
template <TheoryBackend T>
Instantiation fold(const typename T::Constraint& sigma, const Domain& d, const T& theory) {
  if (!theory.satisfiable(sigma, d)) throw PreconditionError("fold of an unsatisfiable constraint");
  const std::size_t k = d.metas().size();
  std::vector<typename T::Constraint> chain(k + 1, sigma);
  for (std::size_t i = k; i > 0; --i) chain[i - 1] = theory.project(chain[i], d.meta_prefix(i));
  Instantiation rho;
  for (std::size_t i = 1; i <= k; ++i) {
    Domain di = d.meta_prefix(i);
    rho.set(di.last_meta().name, theory.witness(chain[i], di, rho));
  }
  return rho;
}

struct Reconstruction {
  bool ok = true;
  std::size_t leaves = 0;
  std::string message;

  explicit operator bool() const { return ok; }
};

namespace detail {

template <TheoryBackend T>
void reconstruct(const ProofNode<typename T::Constraint>& n, const Instantiation& rho, const T& theory,
                 Reconstruction& r) {
  if (!r.ok) return;
  if (!theory.compatible(rho, n.output, n.domain)) {
    r = Reconstruction{false, r.leaves, "instantiation " + rho.to_string() + " not compatible at " + to_string(n.rule)};
    return;
  }
  switch (n.rule) {
    case Rule::Leaf: {
      ++r.leaves;
      auto ground = rho.apply(n.used);
      if (!check_lk1_leaf(theory, ground)) {
        r = Reconstruction{false, r.leaves, "leaf " + to_string(ground) + " is not valid"};
      }
      return;
    }
    case Rule::Exists: {
      const auto& child = *n.children[0];
      Term t = theory.witness(child.output, child.domain, rho);
      reconstruct(child, rho.extended(n.fresh->name, t), theory, r);
      return;
    }
    default:
      for (const auto& c : n.children) reconstruct(*c, rho, theory, r);
  }
}

}  // namespace detail

/// Instantiates every leaf with rho, extended across existential nodes by
/// the witness builder, and checks ground validity there.
template <TheoryBackend T>
Reconstruction reconstruct_ground(const ProofPtr<typename T::Constraint>& tree, const Instantiation& rho,
                                  const T& theory) {
  if (!theory.compatible(rho, tree->output, tree->domain)) {
    throw PreconditionError("instantiation not compatible with the proof's constraint");
  }
  Reconstruction r;
  detail::reconstruct(*tree, rho, theory, r);
  return r;
}

}  // namespace seqmod
