#pragma once

#include "seqmod/theory.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seqmod {

/// Partial map from meta-variables to ground terms; unmapped ones are unassigned.
struct GroundConstraint {
  std::map<std::string, Term> assign;

  friend bool operator==(const GroundConstraint& a, const GroundConstraint& b) { return a.assign == b.assign; }
};

/// Decides validity of a set of ground literals. Returns the indices of a
/// subset that is already valid, or nullopt.
using GroundValidity = std::function<std::optional<std::vector<std::size_t>>(const std::vector<Literal>&)>;

/// The default predicate: some literal together with its complement.
std::optional<std::vector<std::size_t>> complementary_core(const std::vector<Literal>& lits);

struct EnumConfig {
  std::size_t ceiling = 3;
  bool present_first = false;
  std::vector<Rational> samples = default_rational_samples();
};

class EnumTheory {
 public:
  using Constraint = GroundConstraint;

  class Stream {
   public:
    Stream(const EnumTheory& theory, std::vector<Literal> lits, Domain d);
    std::optional<Closure<GroundConstraint>> pull(const GroundConstraint& input);

   private:
    void restart(const GroundConstraint& input);
    bool next_tuple();

    const EnumTheory* theory_;
    std::vector<Literal> lits_;
    Domain domain_;
    std::optional<GroundConstraint> input_;
    std::vector<Var> open_;
    std::vector<std::vector<std::vector<Term>>> by_depth_;  // per open meta, terms grouped by depth
    std::size_t total_ = 0;
    std::size_t max_total_ = 0;
    std::vector<std::vector<std::size_t>> vectors_;  // depth vectors of the current total, lex order
    std::size_t vec_pos_ = 0;
    std::vector<std::size_t> depths_;
    std::vector<std::size_t> index_;
    bool started_ = false;
    bool done_ = false;
  };

  EnumTheory(Signature sig, EnumConfig cfg = {}, GroundValidity gvp = complementary_core)
      : sig_(std::move(sig)), cfg_(std::move(cfg)), gvp_(std::move(gvp)) {}

  std::string name() const { return "enum"; }
  const Signature& signature() const { return sig_; }
  const EnumConfig& config() const { return cfg_; }

  GroundConstraint top(const Domain&) const { return {}; }
  GroundConstraint project(const GroundConstraint& sigma, const Domain& d_with_x) const;
  GroundConstraint lift(const GroundConstraint& sigma, const Domain&) const { return sigma; }
  std::optional<GroundConstraint> meet(const GroundConstraint& a, const GroundConstraint& b, const Domain& d) const;
  bool satisfiable(const GroundConstraint&, const Domain&) const { return true; }
  Stream consistency(const std::vector<Literal>& lits, const Domain& d) const { return Stream(*this, lits, d); }
  bool ground_valid(const std::vector<Literal>& lits) const;
  std::optional<std::vector<std::size_t>> ground_core(const std::vector<Literal>& lits) const { return gvp_(lits); }
  bool compatible(const Instantiation& rho, const GroundConstraint& sigma, const Domain& d) const;
  Term witness(const GroundConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const;
  std::string render(const GroundConstraint& sigma) const;

  /// Candidate terms for a meta-variable, ordered for the stream.
  std::vector<Term> candidates(const Domain& d, const Var& meta, const std::vector<Literal>& lits) const;

 protected:
  Signature sig_;
  EnumConfig cfg_;
  GroundValidity gvp_;
};

}  // namespace seqmod
