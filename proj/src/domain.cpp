#include "seqmod/domain.hpp"

#include "seqmod/errors.hpp"

namespace seqmod {

Domain Domain::initial(std::vector<Var> eigens) {
  Domain d;
  for (const auto& e : eigens) d = d.add_eigen(e);
  d.initial_ = d.eigens_.size();
  return d;
}

void Domain::check_fresh(const std::string& name) const {
  if (declares(name)) throw DomainError("name " + name + " is already declared in the domain");
}

Domain Domain::add_eigen(const Var& eigen) const {
  if (eigen.kind != VarKind::Eigen) throw DomainError(eigen.name + " is not an eigenvariable");
  check_fresh(eigen.name);
  Domain d = *this;
  d.eigens_.push_back(eigen);
  return d;
}

Domain Domain::add_meta(const Var& meta) const {
  if (meta.kind != VarKind::Meta) throw DomainError(meta.name + " is not a meta-variable");
  check_fresh(meta.name);
  Domain d = *this;
  d.metas_.push_back({meta, eigens_.size()});
  return d;
}

bool Domain::declares(const std::string& name) const {
  return find_meta(name) != nullptr || eigen_index(name).has_value();
}

const Domain::MetaEntry* Domain::find_meta(const std::string& name) const {
  for (const auto& m : metas_) {
    if (m.var.name == name) return &m;
  }
  return nullptr;
}

std::optional<std::size_t> Domain::meta_index(const std::string& name) const {
  for (std::size_t i = 0; i < metas_.size(); ++i) {
    if (metas_[i].var.name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Domain::eigen_index(const std::string& name) const {
  for (std::size_t i = 0; i < eigens_.size(); ++i) {
    if (eigens_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Domain::authorised_count(const std::string& meta) const {
  const MetaEntry* m = find_meta(meta);
  if (!m) throw DomainError("meta-variable " + meta + " is not declared");
  return m->authorised;
}

std::vector<Var> Domain::authorised(const std::string& meta) const {
  std::size_t n = authorised_count(meta);
  return {eigens_.begin(), eigens_.begin() + static_cast<std::ptrdiff_t>(n)};
}

bool Domain::authorises(const std::string& meta, const Var& eigen) const {
  auto idx = eigen_index(eigen.name);
  return idx && *idx < authorised_count(meta);
}

std::size_t Domain::visible_eigens() const { return metas_.empty() ? 0 : metas_.back().authorised; }

const Var& Domain::last_meta() const {
  if (metas_.empty()) throw DomainError("domain has no meta-variable");
  return metas_.back().var;
}

Domain Domain::meta_prefix(std::size_t k) const {
  if (k > metas_.size()) throw DomainError("meta prefix longer than the domain");
  Domain d;
  d.initial_ = initial_;
  std::size_t keep = k == 0 ? initial_ : metas_[k - 1].authorised;
  keep = std::max(keep, initial_);
  d.eigens_.assign(eigens_.begin(), eigens_.begin() + static_cast<std::ptrdiff_t>(keep));
  d.metas_.assign(metas_.begin(), metas_.begin() + static_cast<std::ptrdiff_t>(k));
  return d;
}

Domain Domain::without_last_meta() const {
  if (metas_.empty()) throw DomainError("domain has no meta-variable to remove");
  return meta_prefix(metas_.size() - 1);
}

Domain Domain::trimmed() const { return meta_prefix(metas_.size()); }

std::string Domain::to_string() const {
  std::string s = "(";
  std::size_t next_meta = 0;
  bool first = true;
  auto sep = [&] {
    if (!first) s += ", ";
    first = false;
  };
  for (std::size_t i = 0; i <= eigens_.size(); ++i) {
    while (next_meta < metas_.size() && metas_[next_meta].authorised == i) {
      sep();
      s += metas_[next_meta++].var.name;
    }
    if (i < eigens_.size()) {
      sep();
      s += eigens_[i].name;
    }
  }
  return s + ")";
}

}  // namespace seqmod
