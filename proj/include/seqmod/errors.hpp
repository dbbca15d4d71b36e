#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqmod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public Error {
 public:
  using Error::Error;
};

/// Name clashes, undeclared variables, domain shape mismatches.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (disjuncts, atoms) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The witness builder cannot express a witness as a term.
class UnsupportedWitness : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace seqmod
