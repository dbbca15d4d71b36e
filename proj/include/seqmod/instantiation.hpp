#pragma once

#include "seqmod/domain.hpp"
#include "seqmod/formula.hpp"

#include <map>
#include <string>
#include <vector>

namespace seqmod {

/// Mapping from meta-variables to ground terms.
class Instantiation {
 public:
  Instantiation() = default;

  void set(const std::string& meta, Term value);
  const Term* get(const std::string& meta) const;
  bool contains(const std::string& meta) const { return values_.count(meta) != 0; }
  const std::map<std::string, Term>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  Instantiation extended(const std::string& meta, Term value) const;
  /// Keeps the entries for meta-variables of `d`.
  Instantiation restricted(const Domain& d) const;

  /// Replaces every meta-variable; throws DomainError on an unmapped one.
  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Formula apply(const Formula& f) const;
  Context apply(const Context& ctx) const;
  std::vector<Literal> apply(const std::vector<Literal>& lits) const;

  /// Checks domain-completeness, groundness and dependencies.
  void validate(const Domain& d) const;
  bool valid_for(const Domain& d) const;

  std::string to_string() const;

  friend bool operator==(const Instantiation& a, const Instantiation& b) { return a.values_ == b.values_; }
  friend bool operator<(const Instantiation& a, const Instantiation& b) { return a.values_ < b.values_; }

 private:
  std::function<std::optional<Term>(const Var&)> mapper() const;

  std::map<std::string, Term> values_;
};

std::vector<Rational> default_rational_samples();

/// Ground terms of `sort` over the given eigenvariables and the signature,
/// ordered by depth, then lexicographically by construction order. For the
/// rational sort: the sample set followed by the rational eigenvariables.
std::vector<Term> enumerate_ground_terms(const Signature& sig, const std::vector<Var>& eigens, Sort sort,
                                         std::size_t depth, const std::vector<Rational>& samples);

/// Ground terms a meta-variable of `d` may be instantiated with.
std::vector<Term> enumerate_ground_terms(const Signature& sig, const Domain& d, const Var& meta, std::size_t depth,
                                         const std::vector<Rational>& samples = default_rational_samples());

/// Every dependency-respecting instantiation of `d` over the enumerated terms.
std::vector<Instantiation> enumerate_instantiations(const Signature& sig, const Domain& d, std::size_t depth,
                                                    const std::vector<Rational>& samples);

}  // namespace seqmod
