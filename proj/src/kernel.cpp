#include "seqmod/kernel/proof.hpp"
#include "seqmod/kernel/search.hpp"

#include "seqmod/errors.hpp"

namespace seqmod {

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::Leaf:
      return "leaf";
    case Rule::And:
      return "and";
    case Rule::Or:
      return "or";
    case Rule::Exists:
      return "exists";
    case Rule::Forall:
      return "forall";
  }
  return "?";
}

namespace {

void require(const Context& ctx, std::size_t i, Formula::Kind kind) {
  if (i >= ctx.size() || ctx[i].kind() != kind) throw PreconditionError("no matching principal formula");
}

}  // namespace

Context or_child(const Context& ctx, std::size_t i) {
  require(ctx, i, Formula::Kind::Or);
  Context out(ctx.begin(), ctx.begin() + i);
  out.push_back(ctx[i].left());
  out.push_back(ctx[i].right());
  out.insert(out.end(), ctx.begin() + i + 1, ctx.end());
  return out;
}

Context and_child(const Context& ctx, std::size_t i, int side) {
  require(ctx, i, Formula::Kind::And);
  Context out = ctx;
  out[i] = side == 0 ? ctx[i].left() : ctx[i].right();
  return out;
}

Context forall_child(const Context& ctx, std::size_t i, const Var& eigen) {
  require(ctx, i, Formula::Kind::Forall);
  Context out = ctx;
  out[i] = ctx[i].body().substitute(ctx[i].bound(), Term::variable(eigen));
  return out;
}

Context exists_child(const Context& ctx, std::size_t i, const Var& meta) {
  require(ctx, i, Formula::Kind::Exists);
  Context out = ctx;
  out.insert(out.begin() + i + 1, ctx[i].body().substitute(ctx[i].bound(), Term::variable(meta)));
  return out;
}

std::string to_string(Calculus c) { return c == Calculus::DI ? "di" : "sdi"; }

std::string to_string(BranchOrder o) {
  switch (o) {
    case BranchOrder::Left:
      return "left";
    case BranchOrder::Right:
      return "right";
    case BranchOrder::Random:
      return "random";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Proved:
      return "proved";
    case Status::Exhausted:
      return "exhausted";
    case Status::ResourceError:
      return "resource-error";
  }
  return "?";
}

void SearchConfig::validate() const {
  if (max_exists == 0 || pulls == 0 || nodes == 0 || depth == 0) {
    throw PreconditionError("search budgets must be positive");
  }
}

std::uint64_t mix_path(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> deepening_caps(std::size_t max_exists) {
  std::vector<std::size_t> caps;
  for (std::size_t c = 1; c < max_exists; c *= 2) caps.push_back(c);
  caps.push_back(max_exists);
  return caps;
}

}  // namespace seqmod
