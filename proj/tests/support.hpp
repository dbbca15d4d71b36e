#pragma once

#include "seqmod/frontend/problem.hpp"
#include "seqmod/instantiation.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace seqmod::testing {

inline Term c(const std::string& name) { return Term::app(name); }
inline Term f(const Term& t) { return Term::app("f", {t}); }
inline Term g(const Term& a, const Term& b) { return Term::app("g", {a, b}); }
inline Term X(const std::string& name) { return Term::meta(name); }
inline Term Q(const Rational& q) { return Term::number(q); }

inline Literal p(const Term& t, bool positive = true) { return Literal::pred(positive, "p", {t}); }
inline Literal q(const Term& a, const Term& b, bool positive = true) { return Literal::pred(positive, "q", {a, b}); }

inline LinearExpr lin(const Var& v, const Rational& k = 1) { return LinearExpr::variable(v, k); }
inline LinearExpr num(const Rational& k) { return LinearExpr(k); }

inline Var meta(const std::string& name, Sort s = Sort::Individual) { return Var::meta(name, s); }
inline Var eigen(const std::string& name, Sort s = Sort::Individual) { return Var::eigen(name, s); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string corpus_path(const std::string& name) { return std::string(SEQMOD_CORPUS_DIR) + "/" + name; }

inline Problem corpus_problem(const std::string& name) { return parse_problem(read_file(corpus_path(name))); }

/// a/0, f/1, g/2, p/1, q/2.
inline Signature small_signature() {
  Signature sig;
  sig.add_function("a", 0);
  sig.add_function("b", 0);
  sig.add_function("f", 1);
  sig.add_function("g", 2);
  sig.add_predicate("p", {Sort::Individual});
  sig.add_predicate("q", {Sort::Individual, Sort::Individual});
  return sig;
}

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

/// Random term over a, b, f, g with leaves drawn from `leaves` as well.
inline Term random_term(Rng& rng, const std::vector<Term>& leaves, std::size_t depth) {
  std::size_t choice = pick(rng, depth == 0 ? 2 : 4);
  if (choice == 0) return leaves.empty() ? c("a") : leaves[pick(rng, leaves.size())];
  if (choice == 1) return pick(rng, 2) ? c("a") : c("b");
  if (choice == 2) return f(random_term(rng, leaves, depth - 1));
  return g(random_term(rng, leaves, depth - 1), random_term(rng, leaves, depth - 1));
}

inline Rational random_rational(Rng& rng, int range = 4) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace seqmod::testing
