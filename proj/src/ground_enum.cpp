#include "seqmod/ground_enum.hpp"

#include "seqmod/errors.hpp"

#include <algorithm>

namespace seqmod {

namespace {

void collect_ground_subterms(const Term& t, std::set<Term>& out) {
  if (t.is_ground()) out.insert(t);
  if (t.kind() == Term::Kind::App) {
    for (const auto& a : t.args()) collect_ground_subterms(a, out);
  }
}

void depth_vectors(const std::vector<std::size_t>& caps, const std::vector<std::vector<std::vector<Term>>>& groups,
                   std::size_t pos, std::size_t remaining, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (pos == caps.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (std::size_t d = 0; d <= std::min(caps[pos], remaining); ++d) {
    if (groups[pos][d].empty()) continue;
    cur.push_back(d);
    depth_vectors(caps, groups, pos + 1, remaining - d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::optional<std::vector<std::size_t>> complementary_core(const std::vector<Literal>& lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i] == lits[j].negated()) return std::vector<std::size_t>{i, j};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stream

EnumTheory::Stream::Stream(const EnumTheory& theory, std::vector<Literal> lits, Domain d)
    : theory_(&theory), lits_(std::move(lits)), domain_(std::move(d)) {}

void EnumTheory::Stream::restart(const GroundConstraint& input) {
  input_ = input;
  started_ = false;
  done_ = false;
  open_.clear();
  by_depth_.clear();
  std::set<Var> vars;
  for (const auto& l : lits_) l.collect_vars(vars);
  for (const auto& m : domain_.metas()) {
    if (vars.count(m.var) && !input.assign.count(m.var.name)) open_.push_back(m.var);
  }
  max_total_ = 0;
  for (const auto& m : open_) {
    auto terms = theory_->candidates(domain_, m, lits_);
    std::vector<std::vector<Term>> groups;
    for (const auto& t : terms) {
      std::size_t dep = t.depth();
      if (groups.size() <= dep) groups.resize(dep + 1);
      groups[dep].push_back(t);
    }
    if (groups.empty()) groups.resize(1);
    max_total_ += groups.size() - 1;
    by_depth_.push_back(std::move(groups));
  }
}

bool EnumTheory::Stream::next_tuple() {
  const std::size_t k = open_.size();
  auto load = [&](std::size_t total) {
    std::vector<std::size_t> caps;
    for (const auto& g : by_depth_) caps.push_back(g.size() - 1);
    vectors_.clear();
    std::vector<std::size_t> cur;
    depth_vectors(caps, by_depth_, 0, total, cur, vectors_);
    vec_pos_ = 0;
  };
  if (started_) {
    for (std::size_t pos = k; pos-- > 0;) {
      if (++index_[pos] < by_depth_[pos][depths_[pos]].size()) return true;
      index_[pos] = 0;
    }
    ++vec_pos_;
  } else {
    started_ = true;
    total_ = 0;
    load(0);
  }
  while (true) {
    if (vec_pos_ < vectors_.size()) {
      depths_ = vectors_[vec_pos_];
      index_.assign(k, 0);
      return true;
    }
    if (total_ >= max_total_) return false;
    load(++total_);
  }
}

std::optional<Closure<GroundConstraint>> EnumTheory::Stream::pull(const GroundConstraint& input) {
  if (!input_ || !(*input_ == input)) restart(input);
  while (!done_) {
    if (!next_tuple()) {
      done_ = true;
      break;
    }
    GroundConstraint out = input;
    for (std::size_t i = 0; i < open_.size(); ++i) {
      out.assign.insert_or_assign(open_[i].name, by_depth_[i][depths_[i]][index_[i]]);
    }
    std::vector<Literal> ground;
    ground.reserve(lits_.size());
    bool complete = true;
    for (const auto& l : lits_) {
      ground.push_back(l.map_vars([&](const Var& v) -> std::optional<Term> {
        if (!v.is_meta()) return std::nullopt;
        auto it = out.assign.find(v.name);
        if (it == out.assign.end()) {
          complete = false;
          return std::nullopt;
        }
        return it->second;
      }));
    }
    if (!complete) continue;
    if (auto core = theory_->ground_core(ground)) {
      std::vector<Literal> used;
      for (auto i : *core) used.push_back(lits_[i]);
      return Closure<GroundConstraint>{std::move(used), std::move(out)};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// EnumTheory

std::vector<Term> EnumTheory::candidates(const Domain& d, const Var& meta, const std::vector<Literal>& lits) const {
  auto terms = enumerate_ground_terms(sig_, d, meta, cfg_.ceiling, cfg_.samples);
  if (cfg_.present_first) {
    std::set<Term> present;
    for (const auto& l : lits) {
      if (!l.is_arith()) {
        for (const auto& a : l.pred_atom().args) collect_ground_subterms(a, present);
      }
    }
    std::stable_sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      if (a.depth() != b.depth()) return a.depth() < b.depth();
      return present.count(a) > present.count(b);
    });
  }
  return terms;
}

GroundConstraint EnumTheory::project(const GroundConstraint& sigma, const Domain& d_with_x) const {
  GroundConstraint r = sigma;
  r.assign.erase(d_with_x.last_meta().name);
  return r;
}

std::optional<GroundConstraint> EnumTheory::meet(const GroundConstraint& a, const GroundConstraint& b,
                                                 const Domain&) const {
  GroundConstraint r = a;
  for (const auto& [name, t] : b.assign) {
    auto [it, inserted] = r.assign.emplace(name, t);
    if (!inserted && it->second != t) return std::nullopt;
  }
  return r;
}

bool EnumTheory::ground_valid(const std::vector<Literal>& lits) const {
  for (const auto& l : lits) {
    if (!l.is_ground()) throw PreconditionError("ground validity on non-ground literal " + l.to_string());
  }
  return gvp_(lits).has_value();
}

bool EnumTheory::compatible(const Instantiation& rho, const GroundConstraint& sigma, const Domain& d) const {
  for (const auto& [name, t] : sigma.assign) {
    if (!d.find_meta(name)) continue;
    const Term* v = rho.get(name);
    if (!v) throw DomainError("instantiation does not map " + name);
    if (*v != t) return false;
  }
  return true;
}

Term EnumTheory::witness(const GroundConstraint& sigma, const Domain& d_with_x, const Instantiation& rho) const {
  const Var& x = d_with_x.last_meta();
  if (!compatible(rho, project(sigma, d_with_x), d_with_x.without_last_meta())) {
    throw PreconditionError("instantiation is not compatible with the projection");
  }
  auto it = sigma.assign.find(x.name);
  if (it != sigma.assign.end()) return it->second;
  auto terms = enumerate_ground_terms(sig_, d_with_x, x, 0, cfg_.samples);
  if (terms.empty()) throw PreconditionError("no ground term available for " + x.name);
  return terms.front();
}

std::string EnumTheory::render(const GroundConstraint& sigma) const {
  std::string s = "{";
  bool first = true;
  for (const auto& [name, t] : sigma.assign) {
    if (!first) s += ", ";
    first = false;
    s += name + " -> " + t.to_string();
  }
  return s + "}";
}

}  // namespace seqmod
