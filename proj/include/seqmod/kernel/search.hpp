#pragma once

#include "seqmod/errors.hpp"
#include "seqmod/kernel/proof.hpp"
#include "seqmod/theory.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace seqmod {

enum class Calculus { DI, SDI };
enum class BranchOrder { Left, Right, Random };
enum class Status { Proved, Exhausted, ResourceError };

std::string to_string(Calculus c);
std::string to_string(BranchOrder o);
std::string to_string(Status s);

struct SearchConfig {
  Calculus calculus = Calculus::DI;
  BranchOrder order = BranchOrder::Left;
  std::uint64_t seed = 0;
  std::size_t max_exists = 4;  // expansions per existential occurrence and branch
  std::size_t pulls = 10000;   // per leaf stream
  std::size_t nodes = 200000;  // over the whole run
  std::size_t depth = 3;       // enumeration ceiling, read by the enum backend
  PMode pmode = PMode::Satisfiable;

  void validate() const;
};

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t pulls = 0;
  std::size_t backtracks = 0;
  std::size_t iterations = 0;
  std::size_t exists_cap = 0;  // cap of the last deepening iteration
};

template <class C>
struct SearchOutcome {
  Status status = Status::Exhausted;
  ProofPtr<C> proof;
  std::optional<C> constraint;
  std::string detail;
  bool complete = false;  // Exhausted without hitting any cap or budget
  SearchStats stats;
};

std::uint64_t mix_path(std::uint64_t h, std::uint64_t v);
/// 1, 2, 4, ... capped at max_exists (always ending with it).
std::vector<std::size_t> deepening_caps(std::size_t max_exists);

namespace detail {

struct NodeBudgetExceeded {};

template <TheoryBackend T>
class Searcher {
 public:
  using C = typename T::Constraint;
  using Tree = ProofPtr<C>;
  using Cont = std::function<bool(const C&, Tree)>;

  Searcher(const T& theory, const SearchConfig& cfg) : theory_(theory), cfg_(cfg) {}

  SearchOutcome<C> run(const Context& gamma, const Domain& d, const std::optional<C>& sigma0) {
    cfg_.validate();
    SearchOutcome<C> result;
    if (sigma0 && !holds_p(theory_, cfg_.pmode, *sigma0, d)) {
      throw PreconditionError("initial constraint does not satisfy P");
    }
    try {
      for (std::size_t cap : deepening_caps(cfg_.max_exists)) {
        cap_ = cap;
        cap_hit_ = false;
        pull_hit_ = false;
        fresh_ = 0;
        ++stats_.iterations;
        stats_.exists_cap = cap;
        State root{gamma, std::vector<std::size_t>(gamma.size(), 0)};
        bool ok = search(root, d, sigma0, cfg_.seed, [&](const C& out, Tree t) {
          if (d.metas().empty() && !theory_.compatible(Instantiation{}, out, d)) {
            ++stats_.backtracks;
            return false;
          }
          result.proof = std::move(t);
          result.constraint = out;
          return true;
        });
        if (ok) {
          result.status = Status::Proved;
          result.stats = stats_;
          return result;
        }
        if (!cap_hit_) break;
      }
      result.status = Status::Exhausted;
      result.complete = !cap_hit_ && !pull_hit_;
      result.detail = cap_hit_    ? "existential expansion cap reached"
                      : pull_hit_ ? "leaf pull budget reached"
                                  : "search space exhausted";
    } catch (const NodeBudgetExceeded&) {
      result.status = Status::Exhausted;
      result.detail = "node budget reached";
    } catch (const ResourceError& e) {
      result.status = Status::ResourceError;
      result.detail = e.what();
    }
    result.stats = stats_;
    return result;
  }

 private:
  struct State {
    Context ctx;
    std::vector<std::size_t> expansions;
  };

  Tree node(Rule rule, const Domain& d, const State& st, const std::optional<C>& input, const C& out,
            std::size_t principal, std::vector<Tree> children) const {
    auto n = std::make_shared<ProofNode<C>>();
    n->rule = rule;
    n->domain = d;
    n->context = st.ctx;
    n->input = input;
    n->output = out;
    n->principal = principal;
    n->children = std::move(children);
    return n;
  }

  bool right_first(std::uint64_t path) const {
    switch (cfg_.order) {
      case BranchOrder::Left:
        return false;
      case BranchOrder::Right:
        return true;
      case BranchOrder::Random:
        return (mix_path(cfg_.seed, path) & 1U) != 0;
    }
    return false;
  }

  std::string fresh_name(char prefix, const std::string& base) {
    bool digit_end = !base.empty() && base.back() >= '0' && base.back() <= '9';
    return prefix + base + (digit_end ? "_" : "") + std::to_string(++fresh_);
  }

  bool search(const State& st, const Domain& d, const std::optional<C>& input, std::uint64_t path, const Cont& k) {
    if (++stats_.nodes > cfg_.nodes) throw NodeBudgetExceeded{};
    const Context& ctx = st.ctx;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i].kind() == Formula::Kind::Or) return apply_or(st, i, d, input, path, k);
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i].kind() == Formula::Kind::Forall) return apply_forall(st, i, d, input, path, k);
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i].kind() == Formula::Kind::Exists && st.expansions[i] == 0) {
        return apply_exists(st, i, d, input, path, k);
      }
    }
    for (std::size_t i = ctx.size(); i-- > 0;) {
      if (ctx[i].kind() == Formula::Kind::And) return apply_and(st, i, d, input, path, k);
    }
    return close_leaf(st, d, input, path, k);
  }

  bool apply_or(const State& st, std::size_t i, const Domain& d, const std::optional<C>& input, std::uint64_t path,
                const Cont& k) {
    State child{or_child(st.ctx, i), st.expansions};
    child.expansions.insert(child.expansions.begin() + i + 1, 0);
    child.expansions[i] = 0;
    return search(child, d, input, mix_path(path, 0), [&](const C& out, Tree t) {
      return k(out, node(Rule::Or, d, st, input, out, i, {std::move(t)}));
    });
  }

  bool apply_forall(const State& st, std::size_t i, const Domain& d, const std::optional<C>& input,
                    std::uint64_t path, const Cont& k) {
    const Var& bound = st.ctx[i].bound();
    Var eigen = Var::eigen(fresh_name('^', bound.name), bound.sort);
    Domain d2 = d.add_eigen(eigen);
    State child{forall_child(st.ctx, i, eigen), st.expansions};
    return search(child, d2, input, mix_path(path, 0), [&](const C& out, Tree t) {
      auto n = node(Rule::Forall, d, st, input, out, i, {std::move(t)});
      std::const_pointer_cast<ProofNode<C>>(n)->fresh = eigen;
      return k(out, n);
    });
  }

  bool apply_exists(const State& st, std::size_t i, const Domain& d, const std::optional<C>& input,
                    std::uint64_t path, const Cont& k) {
    const Var& bound = st.ctx[i].bound();
    Var meta = Var::meta(fresh_name('?', bound.name), bound.sort);
    Domain d2 = d.add_meta(meta);
    State child{exists_child(st.ctx, i, meta), st.expansions};
    child.expansions[i] += 1;
    child.expansions.insert(child.expansions.begin() + i + 1, 0);
    std::optional<C> child_input;
    if (input) child_input = theory_.lift(*input, d2);
    return search(child, d2, child_input, mix_path(path, st.expansions[i] + 1), [&](const C& out, Tree t) {
      C projected = theory_.project(out, d2);
      if (!holds_p(theory_, cfg_.pmode, projected, d)) {
        ++stats_.backtracks;
        return false;
      }
      auto n = node(Rule::Exists, d, st, input, projected, i, {std::move(t)});
      std::const_pointer_cast<ProofNode<C>>(n)->fresh = meta;
      return k(projected, n);
    });
  }

  bool apply_and(const State& st, std::size_t i, const Domain& d, const std::optional<C>& input, std::uint64_t path,
                 const Cont& k) {
    const bool rf = right_first(path);
    const int first = rf ? 1 : 0;
    const int second = 1 - first;
    State s0{and_child(st.ctx, i, 0), st.expansions};
    State s1{and_child(st.ctx, i, 1), st.expansions};
    const State& sf = first == 0 ? s0 : s1;
    const State& ss = first == 0 ? s1 : s0;
    auto finish = [&](const C& out, Tree tf, Tree ts) {
      std::vector<Tree> children = rf ? std::vector<Tree>{ts, tf} : std::vector<Tree>{tf, ts};
      auto n = node(Rule::And, d, st, input, out, i, std::move(children));
      std::const_pointer_cast<ProofNode<C>>(n)->right_first = rf;
      return k(out, n);
    };
    if (cfg_.calculus == Calculus::DI) {
      return search(sf, d, std::nullopt, mix_path(path, first + 1), [&](const C& of, Tree tf) {
        return search(ss, d, std::nullopt, mix_path(path, second + 1), [&](const C& os, Tree ts) {
          auto m = rf ? theory_.meet(os, of, d) : theory_.meet(of, os, d);
          if (!m || !holds_p(theory_, cfg_.pmode, *m, d)) {
            ++stats_.backtracks;
            return false;
          }
          return finish(*m, tf, ts);
        });
      });
    }
    return search(sf, d, input, mix_path(path, first + 1), [&](const C& of, Tree tf) {
      return search(ss, d, of, mix_path(path, second + 1),
                    [&](const C& os, Tree ts) { return finish(os, tf, ts); });
    });
  }

  bool close_leaf(const State& st, const Domain& d, const std::optional<C>& input, std::uint64_t path,
                  const Cont& k) {
    auto stream = theory_.consistency(literals_of(st.ctx), d);
    const C in = input ? *input : theory_.top(d);
    for (std::size_t index = 1;; ++index) {
      if (index > cfg_.pulls) {
        pull_hit_ = true;
        break;
      }
      ++stats_.pulls;
      auto closure = stream.pull(in);
      if (!closure) break;
      if (!holds_p(theory_, cfg_.pmode, closure->out, d)) continue;
      auto n = std::make_shared<ProofNode<C>>();
      n->rule = Rule::Leaf;
      n->domain = d;
      n->context = st.ctx;
      n->input = input;
      n->output = closure->out;
      n->used = closure->used;
      n->stream_index = index;
      if (k(closure->out, n)) return true;
      ++stats_.backtracks;
    }
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < st.ctx.size(); ++i) {
      if (st.ctx[i].kind() != Formula::Kind::Exists) continue;
      if (!pick || st.expansions[i] < st.expansions[*pick]) pick = i;
    }
    if (!pick) return false;
    if (st.expansions[*pick] >= cap_) {
      cap_hit_ = true;
      return false;
    }
    return apply_exists(st, *pick, d, input, path, k);
  }

  const T& theory_;
  SearchConfig cfg_;
  SearchStats stats_;
  std::size_t cap_ = 1;
  bool cap_hit_ = false;
  bool pull_hit_ = false;
  std::size_t fresh_ = 0;
};

}  // namespace detail

/// Searches for a DI derivation of ⊢_d Γ → σ.
template <TheoryBackend T>
SearchOutcome<typename T::Constraint> prove_di(const Context& gamma, const Domain& d, const T& theory,
                                               SearchConfig cfg) {
  cfg.calculus = Calculus::DI;
  return detail::Searcher<T>(theory, cfg).run(gamma, d, std::nullopt);
}

/// Searches for an SDI derivation of σ₀ → ⊢_d Γ → σ′.
template <TheoryBackend T>
SearchOutcome<typename T::Constraint> prove_sdi(const typename T::Constraint& sigma0, const Context& gamma,
                                                const Domain& d, const T& theory, SearchConfig cfg) {
  cfg.calculus = Calculus::SDI;
  return detail::Searcher<T>(theory, cfg).run(gamma, d, sigma0);
}

/// Dispatches on cfg.calculus; SDI starts from the top constraint.
template <TheoryBackend T>
SearchOutcome<typename T::Constraint> prove(const Context& gamma, const Domain& d, const T& theory,
                                            const SearchConfig& cfg) {
  if (cfg.calculus == Calculus::DI) return prove_di(gamma, d, theory, cfg);
  return prove_sdi(theory.top(d), gamma, d, theory, cfg);
}

}  // namespace seqmod
