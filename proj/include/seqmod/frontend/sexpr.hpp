#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace seqmod {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  /// Head symbol of a non-empty list whose first item is an atom, else "".
  std::string head() const;
  std::string to_string() const;
};

/// Top-level expressions of a text; `;` starts a comment running to end of line.
std::vector<SExpr> parse_sexprs(std::string_view text);

}  // namespace seqmod
