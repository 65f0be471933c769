#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ontosem {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- ontology / lexicon loading ---------------------------------------------

struct CycleError : Error {
  std::vector<std::string> cycle;  // the offending categories, in order
  explicit CycleError(std::vector<std::string> c, const std::string& msg)
      : Error(msg), cycle(std::move(c)) {}
};

struct UnknownCategory : Error {
  std::string category;
  explicit UnknownCategory(std::string cat)
      : Error("unknown category '" + cat + "'"), category(std::move(cat)) {}
};

struct DuplicateDeclaration : Error {
  using Error::Error;
};

struct DuplicateEntry : Error {
  using Error::Error;
};

// Textual input that does not conform to a grammar. `pos` is a byte offset
// into the offending string; `line` is 1-based when the source is a file.
struct SyntaxError : Error {
  std::size_t pos = 0;
  int line = 0;
  SyntaxError(const std::string& msg, std::size_t pos_, int line_ = 0)
      : Error(msg), pos(pos_), line(line_) {}
};

struct NotFound : Error {
  std::string token;
  explicit NotFound(std::string tok, const std::string& what)
      : Error("no lexicon entry for " + what + " '" + tok + "'"), token(std::move(tok)) {}
};

// --- queries -----------------------------------------------------------------

// lub() found several incomparable minimal common ancestors.
struct AmbiguousLub : Error {
  std::vector<std::string> candidates;
  AmbiguousLub(std::vector<std::string> cands, const std::string& msg)
      : Error(msg), candidates(std::move(cands)) {}
};

// --- logical forms / unification ---------------------------------------------

struct ScopeError : Error {
  using Error::Error;
};

struct UnknownVariable : Error {
  std::string display;
  explicit UnknownVariable(std::string d)
      : Error("no variable '" + d + "' in this form"), display(std::move(d)) {}
};

// --- composition --------------------------------------------------------------

struct UnsupportedPattern : Error {
  std::string matched_prefix;  // longest token prefix any pattern accepted
  UnsupportedPattern(const std::string& msg, std::string prefix = {})
      : Error(msg), matched_prefix(std::move(prefix)) {}
};

struct UnsupportedFormer : Error {
  using Error::Error;
};

}  // namespace ontosem
