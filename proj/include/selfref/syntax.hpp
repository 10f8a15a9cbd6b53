#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace selfref {

using VarIndex = std::uint32_t;

/// A primitive symbol of the object language. Variables carry an index and
/// render as "x<index>".
struct Symbol {
  enum class Kind { Zero, Succ, Not, Or, Exists, LParen, RParen, Eq, Plus, Times, Var };

  Kind kind;
  VarIndex var = 0;

  static Symbol of(Kind k) { return Symbol{k, 0}; }
  static Symbol variable(VarIndex i) { return Symbol{Kind::Var, i}; }

  bool operator==(const Symbol& o) const { return kind == o.kind && (kind != Kind::Var || var == o.var); }
};

std::string toString(const Symbol& s);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Term {
 public:
  enum class Kind { Zero, Succ, Var, Plus, Times };

  static Term zero();
  static Term succ(Term child);
  static Term var(VarIndex index);
  static Term plus(Term left, Term right);
  static Term times(Term left, Term right);

  Kind kind() const;
  VarIndex varIndex() const;
  const Term& child() const;  // Succ
  const Term& left() const;   // Plus, Times
  const Term& right() const;

  bool operator==(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { Eq, Not, Or, Exists };

  static Formula eq(Term left, Term right);
  static Formula negation(Formula child);
  static Formula disjunction(Formula left, Formula right);
  static Formula exists(VarIndex bound, Formula body);

  Kind kind() const;
  const Term& lhs() const;  // Eq
  const Term& rhs() const;
  const Formula& child() const;  // Not, Exists
  const Formula& left() const;   // Or
  const Formula& right() const;
  VarIndex boundVar() const;  // Exists

  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Expression = std::variant<Term, Formula>;

/// k_n: Succ applied n times to Zero.
Term numeral(std::size_t n);

/// Splits canonical text into symbols; "x12" is one symbol.
std::vector<Symbol> lex(std::string_view text);

Expression parse(std::string_view text);
Term parseTerm(std::string_view text);
Formula parseFormula(std::string_view text);

/// Parses an already-flattened symbol sequence (the inverse of symbolsOf).
/// Error positions are symbol indices.
Expression parseSymbols(const std::vector<Symbol>& symbols);

std::string render(const Term& t);
std::string render(const Formula& f);
std::string render(const Expression& e);

std::vector<Symbol> symbolsOf(const Term& t);
std::vector<Symbol> symbolsOf(const Formula& f);
std::vector<Symbol> symbolsOf(const Expression& e);

std::size_t symbolCount(const Expression& e);

std::set<VarIndex> freeVariables(const Expression& e);

/// 0-based positions in symbolsOf(e) at which variable v occurs free. The
/// binder occurrence right after E is never free.
std::vector<std::size_t> freeOccurrences(const Expression& e, VarIndex v);

/// Replaces every free occurrence of v. For formulas the replacement must be
/// closed so that no capture question arises.
Term substitute(const Term& t, VarIndex v, const Term& replacement);
Formula substitute(const Formula& f, VarIndex v, const Term& replacement);
Expression substitute(const Expression& e, VarIndex v, const Term& replacement);

bool isClosed(const Term& t);

}  // namespace selfref
