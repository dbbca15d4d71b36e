#include "seqmod/rational.hpp"

namespace seqmod {

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return std::nullopt;
  bool seen_slash = false;
  std::size_t digits_after_slash = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/') {
      if (seen_slash || i == start) return std::nullopt;
      seen_slash = true;
    } else if (c < '0' || c > '9') {
      return std::nullopt;
    } else if (seen_slash) {
      ++digits_after_slash;
    }
  }
  if (seen_slash && digits_after_slash == 0) return std::nullopt;
  std::string body(text.substr(text[0] == '+' ? 1 : 0));
  Rational value;
  if (value.set_str(body, 10) != 0) return std::nullopt;
  if (value.get_den() == 0) return std::nullopt;
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace seqmod
