#pragma once

#include "seqmod/errors.hpp"
#include "seqmod/kernel/proof.hpp"
#include "seqmod/theory.hpp"

#include <algorithm>
#include <string>

namespace seqmod {

struct ProofCheck {
  bool ok = true;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Fig. 1 leaf rule: theory validity of a ground literal set.
template <TheoryBackend T>
bool check_lk1_leaf(const T& theory, const std::vector<Literal>& lits) {
  return theory.ground_valid(lits);
}

namespace detail {

template <TheoryBackend T>
class ProofChecker {
 public:
  using C = typename T::Constraint;

  ProofChecker(const T& theory, PMode mode) : theory_(theory), mode_(mode) {}

  ProofCheck run(const ProofPtr<C>& root) {
    if (!root) return fail("empty proof");
    sdi_ = root->input.has_value();
    try {
      if (sdi_ && !holds_p(theory_, mode_, *root->input, root->domain)) return fail("root input violates P");
      if (root->domain.metas().empty() && !theory_.compatible(Instantiation{}, root->output, root->domain)) {
        return fail("root constraint not compatible with the empty instantiation");
      }
      visit(*root, "root");
    } catch (const Error& e) {
      if (result_.ok) fail(std::string("exception: ") + e.what());
    }
    return result_;
  }

 private:
  ProofCheck fail(const std::string& message) {
    if (result_.ok) result_ = ProofCheck{false, message};
    return result_;
  }

  bool expect(bool cond, const std::string& where, const std::string& what) {
    if (!cond) fail(where + ": " + what);
    return cond;
  }

  void visit(const ProofNode<C>& n, const std::string& where) {
    if (!result_.ok) return;
    if (!expect(n.input.has_value() == sdi_, where, "input presence differs from the calculus")) return;
    switch (n.rule) {
      case Rule::Leaf:
        return leaf(n, where);
      case Rule::Or:
        return or_node(n, where);
      case Rule::Forall:
        return forall_node(n, where);
      case Rule::Exists:
        return exists_node(n, where);
      case Rule::And:
        return and_node(n, where);
    }
  }

  bool children(const ProofNode<C>& n, std::size_t count, const std::string& where) {
    if (!expect(n.children.size() == count, where, "wrong number of children")) return false;
    for (const auto& c : n.children) {
      if (!expect(c != nullptr, where, "missing child")) return false;
    }
    return expect(n.principal < n.context.size(), where, "principal index out of range");
  }

  void leaf(const ProofNode<C>& n, const std::string& where) {
    if (!expect(n.children.empty(), where, "leaf with children")) return;
    auto lits = literals_of(n.context);
    for (const auto& l : n.used) {
      if (!expect(std::find(lits.begin(), lits.end(), l) != lits.end(), where, "used literal not in context")) return;
    }
    if (!expect(n.stream_index > 0, where, "missing stream index")) return;
    auto stream = theory_.consistency(lits, n.domain);
    const C in = sdi_ ? *n.input : theory_.top(n.domain);
    std::optional<Closure<C>> last;
    for (std::size_t i = 0; i < n.stream_index; ++i) {
      last = stream.pull(in);
      if (!expect(last.has_value(), where, "stream ends before the recorded index")) return;
    }
    expect(last->used == n.used, where, "used literals differ from the stream element");
    expect(last->out == n.output, where, "leaf constraint differs from the stream element");
    expect(holds_p(theory_, mode_, n.output, n.domain), where, "leaf constraint violates P");
  }

  void or_node(const ProofNode<C>& n, const std::string& where) {
    if (!children(n, 1, where)) return;
    const auto& c = *n.children[0];
    if (!expect(n.context[n.principal].kind() == Formula::Kind::Or, where, "principal is not a disjunction")) return;
    expect(c.domain == n.domain, where, "domain changed");
    expect(c.context == or_child(n.context, n.principal), where, "child context does not match the rule");
    if (sdi_) expect(c.input == n.input, where, "input not passed on");
    expect(c.output == n.output, where, "output not passed on");
    visit(c, where + ".or");
  }

  void forall_node(const ProofNode<C>& n, const std::string& where) {
    if (!children(n, 1, where)) return;
    const auto& c = *n.children[0];
    if (!expect(n.context[n.principal].kind() == Formula::Kind::Forall, where, "principal is not universal")) return;
    if (!expect(n.fresh && n.fresh->is_eigen(), where, "missing eigenvariable")) return;
    if (!expect(!n.domain.declares(n.fresh->name), where, "eigenvariable not fresh")) return;
    expect(c.domain == n.domain.add_eigen(*n.fresh), where, "child domain does not add the eigenvariable");
    expect(c.context == forall_child(n.context, n.principal, *n.fresh), where, "child context does not match");
    if (sdi_) expect(c.input == n.input, where, "input not passed on");
    expect(c.output == n.output, where, "output not passed on");
    visit(c, where + ".forall");
  }

  void exists_node(const ProofNode<C>& n, const std::string& where) {
    if (!children(n, 1, where)) return;
    const auto& c = *n.children[0];
    if (!expect(n.context[n.principal].kind() == Formula::Kind::Exists, where, "principal is not existential")) {
      return;
    }
    if (!expect(n.fresh && n.fresh->is_meta(), where, "missing meta-variable")) return;
    if (!expect(!n.domain.declares(n.fresh->name), where, "meta-variable not fresh")) return;
    Domain d2 = n.domain.add_meta(*n.fresh);
    expect(c.domain == d2, where, "child domain does not add the meta-variable");
    expect(c.context == exists_child(n.context, n.principal, *n.fresh), where, "child context does not match");
    if (sdi_) expect(c.input && *c.input == theory_.lift(*n.input, d2), where, "child input is not the lift");
    expect(theory_.project(c.output, d2) == n.output, where, "output is not the projection of the child's");
    visit(c, where + ".exists");
  }

  void and_node(const ProofNode<C>& n, const std::string& where) {
    if (!children(n, 2, where)) return;
    if (!expect(n.context[n.principal].kind() == Formula::Kind::And, where, "principal is not a conjunction")) return;
    const auto& l = *n.children[0];
    const auto& r = *n.children[1];
    for (int side = 0; side < 2; ++side) {
      const auto& c = *n.children[side];
      expect(c.domain == n.domain, where, "domain changed");
      expect(c.context == and_child(n.context, n.principal, side), where, "child context does not match");
    }
    if (sdi_) {
      const auto& first = n.right_first ? r : l;
      const auto& second = n.right_first ? l : r;
      expect(first.input == n.input, where, "first child does not receive the input");
      expect(second.input && *second.input == first.output, where, "second child input is not the first's output");
      expect(second.output == n.output, where, "output is not the second child's");
    } else {
      auto m = theory_.meet(l.output, r.output, n.domain);
      expect(m && *m == n.output, where, "output is not the meet of the children");
    }
    visit(l, where + ".and0");
    visit(r, where + ".and1");
  }

  const T& theory_;
  PMode mode_;
  bool sdi_ = false;
  ProofCheck result_;
};

}  // namespace detail

/// Replays every rule application of a DI or SDI tree (SDI iff the root has an input).
template <TheoryBackend T>
ProofCheck check_proof(const ProofPtr<typename T::Constraint>& tree, const T& theory,
                       PMode mode = PMode::Satisfiable) {
  return detail::ProofChecker<T>(theory, mode).run(tree);
}

}  // namespace seqmod
