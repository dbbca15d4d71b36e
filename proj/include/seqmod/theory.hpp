#pragma once

#include "seqmod/domain.hpp"
#include "seqmod/formula.hpp"
#include "seqmod/instantiation.hpp"

#include <concepts>
#include <optional>
#include <string>
#include <vector>

namespace seqmod {

/// One element of a consistency stream: the literals that closed the leaf
/// and the resulting constraint.
template <class C>
struct Closure {
  std::vector<Literal> used;
  C out;
};

enum class PMode { Satisfiable, AlwaysTrue };

/// Backend contract. `project` and `lift` take the domain whose newest
/// meta-variable is the one being removed or added. `consistency` returns a
/// single-owner stream whose `pull(input)` yields the next closure refining
/// `input`, or nullopt once exhausted. `compatible` and `witness` are used by
/// the checker, fold, reconstruction and the conformance harness, never by search.
template <class T>
concept TheoryBackend = requires(const T& t, const typename T::Constraint& c, const Domain& d,
                                 const std::vector<Literal>& lits, const Instantiation& rho,
                                 typename T::Stream& stream) {
  typename T::Constraint;
  typename T::Stream;
  { t.name() } -> std::convertible_to<std::string>;
  { t.top(d) } -> std::same_as<typename T::Constraint>;
  { t.project(c, d) } -> std::same_as<typename T::Constraint>;
  { t.lift(c, d) } -> std::same_as<typename T::Constraint>;
  { t.meet(c, c, d) } -> std::same_as<std::optional<typename T::Constraint>>;
  { t.satisfiable(c, d) } -> std::same_as<bool>;
  { t.consistency(lits, d) } -> std::same_as<typename T::Stream>;
  { stream.pull(c) } -> std::same_as<std::optional<Closure<typename T::Constraint>>>;
  { t.ground_valid(lits) } -> std::same_as<bool>;
  { t.compatible(rho, c, d) } -> std::same_as<bool>;
  { t.witness(c, d, rho) } -> std::same_as<Term>;
  { t.render(c) } -> std::convertible_to<std::string>;
  { c == c } -> std::convertible_to<bool>;
};

template <class T>
bool holds_p(const T& theory, PMode mode, const typename T::Constraint& c, const Domain& d) {
  return mode == PMode::AlwaysTrue || theory.satisfiable(c, d);
}

}  // namespace seqmod
