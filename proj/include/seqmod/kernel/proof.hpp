#pragma once

#include "seqmod/domain.hpp"
#include "seqmod/formula.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace seqmod {

enum class Rule { Leaf, And, Or, Exists, Forall };

std::string to_string(Rule rule);

template <class C>
struct ProofNode;

template <class C>
using ProofPtr = std::shared_ptr<const ProofNode<C>>;

/// One rule application. `input` is present exactly in SDI trees.
/// For And nodes children are stored left then right; `right_first`
/// records which one was explored (and, in SDI, threaded) first.
template <class C>
struct ProofNode {
  Rule rule = Rule::Leaf;
  Domain domain;
  Context context;
  std::optional<C> input;
  C output;
  std::size_t principal = 0;
  bool right_first = false;
  std::optional<Var> fresh;
  std::vector<Literal> used;
  std::size_t stream_index = 0;
  std::vector<ProofPtr<C>> children;
};

/// Children in the order they were explored.
template <class C>
std::vector<ProofPtr<C>> explored_children(const ProofNode<C>& node) {
  if (node.rule == Rule::And && node.right_first) return {node.children[1], node.children[0]};
  return node.children;
}

/// Leaves in exploration order (the SDI threading order).
template <class C>
std::vector<ProofPtr<C>> leaf_sequence(const ProofPtr<C>& root) {
  std::vector<ProofPtr<C>> out;
  std::function<void(const ProofPtr<C>&)> walk = [&](const ProofPtr<C>& n) {
    if (n->rule == Rule::Leaf) {
      out.push_back(n);
      return;
    }
    for (const auto& c : explored_children(*n)) walk(c);
  };
  walk(root);
  return out;
}

template <class C>
std::size_t proof_size(const ProofPtr<C>& root) {
  std::size_t n = 1;
  for (const auto& c : root->children) n += proof_size(c);
  return n;
}

// Child contexts of each rule, shared by search and checker.
Context or_child(const Context& ctx, std::size_t i);
Context and_child(const Context& ctx, std::size_t i, int side);
Context forall_child(const Context& ctx, std::size_t i, const Var& eigen);
/// Keeps the existential and inserts its instance right after it.
Context exists_child(const Context& ctx, std::size_t i, const Var& meta);

}  // namespace seqmod
