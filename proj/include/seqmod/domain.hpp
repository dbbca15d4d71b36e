#pragma once

#include "seqmod/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seqmod {

/// The pair (Φ; Δ). A meta-variable is authorised for exactly the
/// eigenvariables declared before it, so its authorised set is stored as a
/// prefix length of the eigenvariable list.
class Domain {
 public:
  struct MetaEntry {
    Var var;
    std::size_t authorised = 0;

    friend bool operator==(const MetaEntry& a, const MetaEntry& b) {
      return a.var == b.var && a.authorised == b.authorised;
    }
  };

  Domain() = default;
  /// d_init: the given eigenvariables and no meta-variables.
  static Domain initial(std::vector<Var> eigens);

  Domain add_eigen(const Var& eigen) const;
  Domain add_meta(const Var& meta) const;

  const std::vector<Var>& eigens() const { return eigens_; }
  const std::vector<MetaEntry>& metas() const { return metas_; }
  std::size_t initial_eigens() const { return initial_; }

  bool declares(const std::string& name) const;
  const MetaEntry* find_meta(const std::string& name) const;
  std::optional<std::size_t> meta_index(const std::string& name) const;
  std::optional<std::size_t> eigen_index(const std::string& name) const;

  /// Number of eigenvariables a meta-variable may depend on.
  std::size_t authorised_count(const std::string& meta) const;
  std::vector<Var> authorised(const std::string& meta) const;
  bool authorises(const std::string& meta, const Var& eigen) const;

  /// Eigenvariables visible to the newest meta-variable (none without metas).
  std::size_t visible_eigens() const;
  const Var& last_meta() const;

  /// The domain obtained by keeping the first k meta-variables and the
  /// eigenvariables declared before the k-th one (Ψ does not see later eigens).
  Domain meta_prefix(std::size_t k) const;
  /// meta_prefix(#metas - 1).
  Domain without_last_meta() const;
  /// meta_prefix(#metas): drops eigenvariables declared after the newest meta.
  Domain trimmed() const;

  std::string to_string() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.initial_ == b.initial_ && a.eigens_ == b.eigens_ && a.metas_ == b.metas_;
  }
  friend bool operator!=(const Domain& a, const Domain& b) { return !(a == b); }

 private:
  void check_fresh(const std::string& name) const;

  std::vector<Var> eigens_;
  std::vector<MetaEntry> metas_;
  std::size_t initial_ = 0;
};

}  // namespace seqmod
