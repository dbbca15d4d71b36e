#pragma once

#include "seqmod/errors.hpp"
#include "seqmod/fol.hpp"
#include "seqmod/ground_enum.hpp"
#include "seqmod/lra.hpp"
#include "seqmod/theory.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace seqmod {

enum class Axiom { Proj, Wit, Meet, Pg, Lift, P1, P2, A1, A2, D1, D2 };

std::string to_string(Axiom a);
const std::vector<Axiom>& all_axioms();

/// Bounded stand-in for the set of instantiations of a domain.
struct UniverseSpec {
  Signature signature;
  Domain domain;
  std::size_t depth = 2;
  std::vector<Rational> samples = default_rational_samples();
};

struct AxiomReport {
  Axiom axiom = Axiom::Proj;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::size_t skipped = 0;    // witness not supported
  std::size_t vacuous = 0;    // premise empty on the bounded universe
  std::size_t truncated = 0;  // stream cut at the budget
  std::vector<std::string> failures;
  std::vector<std::string> caveats;

  bool passed() const { return failures.empty(); }
};

struct HarnessConfig {
  std::size_t cases = 200;
  std::size_t stream_budget = 16;
  std::size_t max_failures = 3;
  std::uint64_t seed = 1;
};

using Rng = std::mt19937_64;
using LiteralGen = std::function<std::vector<Literal>(Rng&, const Domain&)>;

/// One-step weakenings of a constraint, used to shrink counterexamples.
std::vector<SubstConstraint> shrink_steps(const SubstConstraint& c);
std::vector<GroundConstraint> shrink_steps(const GroundConstraint& c);
std::vector<PolyConstraint> shrink_steps(const PolyConstraint& c);

using Bits = std::vector<bool>;

inline bool subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

inline bool none(const Bits& a) { return std::none_of(a.begin(), a.end(), [](bool x) { return x; }); }

template <TheoryBackend T>
class OracleUniverse {
 public:
  using C = typename T::Constraint;

  OracleUniverse(const T& theory, UniverseSpec spec) : theory_(theory), spec_(std::move(spec)) {}

  const UniverseSpec& spec() const { return spec_; }

  const std::vector<Instantiation>& instantiations(const Domain& d) {
    auto key = d.to_string();
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      it = memo_.emplace(key, enumerate_instantiations(spec_.signature, d, spec_.depth, spec_.samples)).first;
    }
    return it->second;
  }

  /// Membership of each universe instantiation of d in {ρ | ρ ε σ}.
  Bits compatibles(const C& sigma, const Domain& d) {
    const auto& all = instantiations(d);
    Bits out(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) out[i] = theory_.compatible(all[i], sigma, d);
    return out;
  }

  Bits compatibles(const std::optional<C>& sigma, const Domain& d) {
    if (!sigma) return Bits(instantiations(d).size(), false);
    return compatibles(*sigma, d);
  }

 private:
  const T& theory_;
  UniverseSpec spec_;
  std::map<std::string, std::vector<Instantiation>> memo_;
};

/// The instantiations of the universe compatible with σ.
template <TheoryBackend T>
std::vector<Instantiation> oracle_compatibles(const typename T::Constraint& sigma, OracleUniverse<T>& u,
                                              const Domain& d) {
  std::vector<Instantiation> out;
  const auto& all = u.instantiations(d);
  Bits b = u.compatibles(sigma, d);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (b[i]) out.push_back(all[i]);
  }
  return out;
}

/// Runs the quantified statement of each axiom over generated constraints.
template <TheoryBackend T>
class AxiomChecker {
 public:
  using C = typename T::Constraint;

  struct Case {
    Domain domain;  // the extended domain for axioms mentioning a fresh meta-variable
    std::vector<C> cs;
    std::vector<Literal> lits;
  };

  AxiomChecker(const T& theory, UniverseSpec spec, LiteralGen gen, HarnessConfig cfg)
      : theory_(theory), u_(theory, std::move(spec)), gen_(std::move(gen)), cfg_(cfg) {}

  OracleUniverse<T>& universe() { return u_; }

  AxiomReport check(Axiom ax) {
    AxiomReport report;
    report.axiom = ax;
    Rng rng(cfg_.seed * 1000003ULL + static_cast<std::uint64_t>(ax));
    for (std::size_t i = 0; i < cfg_.cases; ++i) {
      Case c = make_case(ax, rng);
      ++report.cases;
      std::optional<std::string> failure;
      try {
        failure = run(ax, c, report);
      } catch (const Error& e) {
        failure = std::string("exception: ") + e.what();
      }
      if (failure) {
        AxiomReport scratch;
        Case small = shrink(ax, c, scratch);
        std::optional<std::string> again;
        try {
          again = run(ax, small, scratch);
        } catch (const Error& e) {
          again = std::string("exception: ") + e.what();
        }
        report.failures.push_back(describe(small) + " :: " + (again ? *again : *failure));
        if (report.failures.size() >= cfg_.max_failures) break;
      }
    }
    caveats(report);
    return report;
  }

  std::vector<AxiomReport> check_all() {
    std::vector<AxiomReport> out;
    for (Axiom a : all_axioms()) out.push_back(check(a));
    return out;
  }

 private:
  // ---- case generation ----

  std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

  Domain prefix(Rng& rng, std::size_t min_metas) {
    const Domain& full = u_.spec().domain;
    std::size_t k = full.metas().size();
    if (k > min_metas && !chance(rng, 0.6)) k = min_metas + pick(rng, k - min_metas + 1);
    return full.meta_prefix(k);
  }

  std::optional<C> closure(Rng& rng, const Domain& d) {
    auto lits = gen_(rng, d);
    auto stream = theory_.consistency(lits, d);
    std::size_t skip = pick(rng, 3);
    std::optional<C> last;
    for (std::size_t i = 0; i <= skip; ++i) {
      auto c = stream.pull(theory_.top(d));
      if (!c) break;
      last = c->out;
    }
    return last;
  }

  C constraint(Rng& rng, const Domain& d, int fuel = 2) {
    double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (fuel > 0 && r < 0.3) {
      C a = constraint(rng, d, fuel - 1);
      C b = constraint(rng, d, fuel - 1);
      if (auto m = theory_.meet(a, b, d)) return *m;
      return a;
    }
    if (fuel > 0 && r < 0.4 && !d.metas().empty()) {
      Domain smaller = d.without_last_meta();
      return theory_.lift(constraint(rng, smaller, fuel - 1), d);
    }
    if (fuel > 0 && r < 0.5) {
      Domain bigger = d.add_meta(Var::meta("Z" + std::to_string(d.metas().size()), pick_sort(rng)));
      return theory_.project(constraint(rng, bigger, fuel - 1), bigger);
    }
    if (r < 0.95) {
      if (auto c = closure(rng, d)) return *c;
    }
    return theory_.top(d);
  }

  Sort pick_sort(Rng&) const {
    const auto& metas = u_.spec().domain.metas();
    return metas.empty() ? Sort::Individual : metas.back().var.sort;
  }

  Case make_case(Axiom ax, Rng& rng) {
    Case c;
    switch (ax) {
      case Axiom::Proj:
      case Axiom::Wit:
      case Axiom::P1:
        c.domain = prefix(rng, 1);
        c.cs = {constraint(rng, c.domain)};
        break;
      case Axiom::Lift:
        c.domain = prefix(rng, 1);
        c.cs = {constraint(rng, c.domain.without_last_meta())};
        break;
      case Axiom::D2:
        c.domain = prefix(rng, 1);
        c.cs = {constraint(rng, c.domain.without_last_meta()), constraint(rng, c.domain)};
        break;
      case Axiom::Meet:
        c.domain = prefix(rng, 0);
        c.cs = {constraint(rng, c.domain), constraint(rng, c.domain)};
        break;
      case Axiom::P2: {
        c.domain = prefix(rng, 0);
        C weak = constraint(rng, c.domain);
        C strong = weak;
        if (auto m = theory_.meet(weak, constraint(rng, c.domain), c.domain)) strong = *m;
        c.cs = chance(rng, 0.8) ? std::vector<C>{strong, weak} : std::vector<C>{weak, strong};
        break;
      }
      case Axiom::D1: {
        c.domain = prefix(rng, 0);
        C a = constraint(rng, c.domain);
        C b = constraint(rng, c.domain);
        C t = constraint(rng, c.domain);
        if (chance(rng, 0.6)) {
          if (auto m = theory_.meet(a, b, c.domain)) {
            if (auto m2 = theory_.meet(*m, t, c.domain)) t = *m2;
          }
        }
        c.cs = {a, b, t};
        break;
      }
      case Axiom::Pg:
        c.domain = prefix(rng, 0);
        c.lits = gen_(rng, c.domain);
        break;
      case Axiom::A1:
      case Axiom::A2:
        c.domain = prefix(rng, 0);
        c.lits = gen_(rng, c.domain);
        c.cs = {chance(rng, 0.2) ? theory_.top(c.domain) : constraint(rng, c.domain)};
        break;
    }
    return c;
  }

  // ---- axiom statements ----

  std::string show(const Instantiation& rho) const { return rho.to_string(); }

  std::optional<std::string> run(Axiom ax, const Case& c, AxiomReport& r) {
    const Domain& d = c.domain;
    switch (ax) {
      case Axiom::Proj: {
        Domain small = d.without_last_meta();
        C down = theory_.project(c.cs[0], d);
        for (const auto& rho : u_.instantiations(d)) {
          ++r.checks;
          if (theory_.compatible(rho, c.cs[0], d) && !theory_.compatible(rho.restricted(small), down, small)) {
            return "compatible with σ but its restriction is not compatible with the projection: " + show(rho);
          }
        }
        return std::nullopt;
      }
      case Axiom::Wit: {
        Domain small = d.without_last_meta();
        C down = theory_.project(c.cs[0], d);
        for (const auto& rho : u_.instantiations(small)) {
          if (!theory_.compatible(rho, down, small)) continue;
          ++r.checks;
          std::optional<Term> w;
          try {
            w = theory_.witness(c.cs[0], d, rho);
          } catch (const UnsupportedWitness&) {
            ++r.skipped;
            continue;
          }
          const Term& t = *w;
          auto ext = rho.extended(d.last_meta().name, t);
          if (!ext.valid_for(d)) return "witness " + t.to_string() + " violates dependencies for " + show(rho);
          if (!theory_.compatible(ext, c.cs[0], d)) {
            return "witness " + t.to_string() + " does not extend " + show(rho) + " into σ";
          }
        }
        return std::nullopt;
      }
      case Axiom::Meet: {
        auto m = theory_.meet(c.cs[0], c.cs[1], d);
        for (const auto& rho : u_.instantiations(d)) {
          ++r.checks;
          bool both = theory_.compatible(rho, c.cs[0], d) && theory_.compatible(rho, c.cs[1], d);
          bool in_meet = m && theory_.compatible(rho, *m, d);
          if (both != in_meet) {
            return std::string(both ? "compatible with both but not with the meet: "
                                    : "compatible with the meet but not with both: ") +
                   show(rho);
          }
        }
        return std::nullopt;
      }
      case Axiom::Pg: {
        auto stream = theory_.consistency(c.lits, d);
        const auto& all = u_.instantiations(d);
        Bits covered(all.size(), false);
        bool exhausted = false;
        for (std::size_t i = 0; i < cfg_.stream_budget; ++i) {
          auto cl = stream.pull(theory_.top(d));
          if (!cl) {
            exhausted = true;
            break;
          }
          Bits s = u_.compatibles(cl->out, d);
          for (std::size_t j = 0; j < all.size(); ++j) {
            if (!s[j]) continue;
            covered[j] = true;
            ++r.checks;
            if (!theory_.ground_valid(all[j].apply(c.lits))) {
              return "compatible with produced " + theory_.render(cl->out) + " but not valid: " + show(all[j]);
            }
          }
        }
        if (!exhausted) {
          ++r.truncated;
          return std::nullopt;
        }
        for (std::size_t j = 0; j < all.size(); ++j) {
          if (covered[j]) continue;
          ++r.checks;
          if (theory_.ground_valid(all[j].apply(c.lits))) {
            return "valid instance not covered by any produced constraint: " + show(all[j]);
          }
        }
        return std::nullopt;
      }
      case Axiom::Lift: {
        Domain small = d.without_last_meta();
        C up = theory_.lift(c.cs[0], d);
        for (const auto& rho : u_.instantiations(d)) {
          ++r.checks;
          if (theory_.compatible(rho, up, d) != theory_.compatible(rho.restricted(small), c.cs[0], small)) {
            return "lift changes compatibility of " + show(rho);
          }
        }
        return std::nullopt;
      }
      case Axiom::P1: {
        Domain small = d.without_last_meta();
        ++r.checks;
        C down = theory_.project(c.cs[0], d);
        for (PMode mode : {PMode::Satisfiable, PMode::AlwaysTrue}) {
          if (holds_p(theory_, mode, c.cs[0], d) != holds_p(theory_, mode, down, small)) {
            return "P differs between σ and its projection " + theory_.render(down);
          }
        }
        return std::nullopt;
      }
      case Axiom::P2: {
        Bits a = u_.compatibles(c.cs[0], d);
        Bits b = u_.compatibles(c.cs[1], d);
        if (!theory_.satisfiable(c.cs[0], d) || !subset(a, b)) return std::nullopt;
        if (none(a)) {
          ++r.vacuous;
          return std::nullopt;
        }
        ++r.checks;
        if (!theory_.satisfiable(c.cs[1], d)) return "P(σ) and σ ⊑ σ′ but not P(σ′)";
        return std::nullopt;
      }
      case Axiom::A1:
        return relate(c, r, true);
      case Axiom::A2:
        return relate(c, r, false);
      case Axiom::D1: {
        auto m = theory_.meet(c.cs[0], c.cs[1], d);
        Bits sm = u_.compatibles(m, d);
        Bits sa = u_.compatibles(c.cs[0], d);
        Bits sb = u_.compatibles(c.cs[1], d);
        Bits st = u_.compatibles(c.cs[2], d);
        ++r.checks;
        if (!subset(sm, sa) || !subset(sm, sb)) return "meet is not below both arguments";
        if (subset(st, sa) && subset(st, sb)) {
          if (none(st)) ++r.vacuous;
          if (!subset(st, sm)) return "a common lower bound is not below the meet";
        }
        return std::nullopt;
      }
      case Axiom::D2: {
        Domain small = d.without_last_meta();
        auto lhs = theory_.meet(theory_.lift(c.cs[0], d), c.cs[1], d);
        std::optional<C> lhs_down;
        if (lhs) lhs_down = theory_.project(*lhs, d);
        auto rhs = theory_.meet(c.cs[0], theory_.project(c.cs[1], d), small);
        ++r.checks;
        Bits a = u_.compatibles(lhs_down, small);
        Bits b = u_.compatibles(rhs, small);
        if (a != b) return "projection of the lifted meet differs from the meet with the projection";
        if (none(a)) ++r.vacuous;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  // A1 (producing) or A2 (refining) for one leaf and input.
  std::optional<std::string> relate(const Case& c, AxiomReport& r, bool producing) {
    const Domain& d = c.domain;
    const C& input = c.cs[0];
    if (!theory_.satisfiable(input, d)) {
      ++r.vacuous;
      return std::nullopt;
    }
    auto collect = [&](const C& in, std::vector<C>& out) {
      auto stream = theory_.consistency(c.lits, d);
      for (std::size_t i = 0; i < cfg_.stream_budget; ++i) {
        auto cl = stream.pull(in);
        if (!cl) return true;
        out.push_back(cl->out);
      }
      return false;
    };
    std::vector<C> refined;
    std::vector<C> produced;
    bool refined_all = collect(input, refined);
    bool produced_all = collect(theory_.top(d), produced);
    if (!refined_all || !produced_all) ++r.truncated;
    if (producing) {
      for (const auto& out : refined) {
        ++r.checks;
        Bits target = u_.compatibles(out, d);
        bool found = false;
        for (const auto& p : produced) {
          auto m = theory_.meet(input, p, d);
          if (m && holds_p(theory_, PMode::Satisfiable, *m, d) && u_.compatibles(*m, d) == target) {
            found = true;
            break;
          }
        }
        if (!found && produced_all) return "refined output " + theory_.render(out) + " has no producing factor";
      }
    } else {
      std::vector<Bits> refined_sets;
      for (const auto& out : refined) refined_sets.push_back(u_.compatibles(out, d));
      for (const auto& p : produced) {
        auto m = theory_.meet(input, p, d);
        if (!m || !theory_.satisfiable(*m, d)) continue;
        ++r.checks;
        Bits target = u_.compatibles(*m, d);
        bool found = std::find(refined_sets.begin(), refined_sets.end(), target) != refined_sets.end();
        if (!found && refined_all) return "produced " + theory_.render(p) + " has no refined counterpart";
      }
    }
    return std::nullopt;
  }

  // ---- shrinking ----

  Case shrink(Axiom ax, Case c, AxiomReport& scratch) {
    auto fails = [&](const Case& k) {
      try {
        return run(ax, k, scratch).has_value();
      } catch (const Error&) {
        return true;
      }
    };
    bool progress = true;
    for (int rounds = 0; progress && rounds < 50; ++rounds) {
      progress = false;
      for (std::size_t i = 0; i < c.cs.size() && !progress; ++i) {
        for (auto& smaller : shrink_steps(c.cs[i])) {
          Case k = c;
          k.cs[i] = smaller;
          if (fails(k)) {
            c = std::move(k);
            progress = true;
            break;
          }
        }
      }
      for (std::size_t i = 0; i < c.lits.size() && !progress; ++i) {
        Case k = c;
        k.lits.erase(k.lits.begin() + static_cast<std::ptrdiff_t>(i));
        if (fails(k)) {
          c = std::move(k);
          progress = true;
        }
      }
    }
    return c;
  }

  std::string describe(const Case& c) const {
    std::string out = "domain " + c.domain.to_string();
    for (std::size_t i = 0; i < c.cs.size(); ++i) out += "; arg" + std::to_string(i) + " = " + theory_.render(c.cs[i]);
    if (!c.lits.empty()) out += "; literals " + to_string(c.lits);
    return out;
  }

  void caveats(AxiomReport& r) const {
    if (r.skipped) r.caveats.push_back(std::to_string(r.skipped) + " witness checks skipped: unsupported witness");
    if (r.vacuous) r.caveats.push_back(std::to_string(r.vacuous) + " cases vacuous on the bounded universe");
    if (r.truncated) {
      r.caveats.push_back(std::to_string(r.truncated) + " streams cut at " + std::to_string(cfg_.stream_budget) +
                          " elements; completeness direction only checked up to the cut");
    }
    if (r.axiom == Axiom::Pg) r.caveats.push_back("union over produced constraints is bounded by the stream budget");
    if (r.axiom == Axiom::P2 || r.axiom == Axiom::D1 || r.axiom == Axiom::D2 || r.axiom == Axiom::A1 ||
        r.axiom == Axiom::A2) {
      r.caveats.push_back("preorder decided on the bounded universe");
    }
  }

  const T& theory_;
  OracleUniverse<T> u_;
  LiteralGen gen_;
  HarnessConfig cfg_;
};

}  // namespace seqmod
