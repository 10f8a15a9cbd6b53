#include "selfref/syntax.hpp"

#include <cctype>
#include <optional>

namespace selfref {

struct Term::Node {
  Kind kind;
  VarIndex var = 0;
  std::optional<Term> a;
  std::optional<Term> b;
};

struct Formula::Node {
  Kind kind;
  VarIndex var = 0;
  std::optional<Term> lhs;
  std::optional<Term> rhs;
  std::optional<Formula> a;
  std::optional<Formula> b;
};

// ---- Term -------------------------------------------------------------------

Term Term::zero() {
  static const Term z(std::make_shared<const Node>(Node{Kind::Zero, 0, {}, {}}));
  return z;
}

Term Term::succ(Term child) { return Term(std::make_shared<const Node>(Node{Kind::Succ, 0, std::move(child), {}})); }

Term Term::var(VarIndex index) { return Term(std::make_shared<const Node>(Node{Kind::Var, index, {}, {}})); }

Term Term::plus(Term l, Term r) {
  return Term(std::make_shared<const Node>(Node{Kind::Plus, 0, std::move(l), std::move(r)}));
}

Term Term::times(Term l, Term r) {
  return Term(std::make_shared<const Node>(Node{Kind::Times, 0, std::move(l), std::move(r)}));
}

Term::Kind Term::kind() const { return node_->kind; }

VarIndex Term::varIndex() const {
  if (kind() != Kind::Var) throw std::logic_error("Term::varIndex on non-variable");
  return node_->var;
}

const Term& Term::child() const {
  if (kind() != Kind::Succ) throw std::logic_error("Term::child on non-successor");
  return *node_->a;
}

const Term& Term::left() const {
  if (kind() != Kind::Plus && kind() != Kind::Times) throw std::logic_error("Term::left on non-binary term");
  return *node_->a;
}

const Term& Term::right() const {
  if (kind() != Kind::Plus && kind() != Kind::Times) throw std::logic_error("Term::right on non-binary term");
  return *node_->b;
}

bool Term::operator==(const Term& other) const {
  const Term* x = this;
  const Term* y = &other;
  // Walk successor chains iteratively; numerals can be long.
  while (true) {
    if (x->node_ == y->node_) return true;
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Kind::Zero: return true;
      case Kind::Var: return x->node_->var == y->node_->var;
      case Kind::Succ:
        x = &x->child();
        y = &y->child();
        continue;
      case Kind::Plus:
      case Kind::Times:
        return x->left() == y->left() && x->right() == y->right();
    }
  }
}

// ---- Formula ----------------------------------------------------------------

Formula Formula::eq(Term l, Term r) {
  return Formula(std::make_shared<const Node>(Node{Kind::Eq, 0, std::move(l), std::move(r), {}, {}}));
}

Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, 0, {}, {}, std::move(child), {}}));
}

Formula Formula::disjunction(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, 0, {}, {}, std::move(l), std::move(r)}));
}

Formula Formula::exists(VarIndex bound, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Exists, bound, {}, {}, std::move(body), {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Term& Formula::lhs() const {
  if (kind() != Kind::Eq) throw std::logic_error("Formula::lhs on non-equation");
  return *node_->lhs;
}

const Term& Formula::rhs() const {
  if (kind() != Kind::Eq) throw std::logic_error("Formula::rhs on non-equation");
  return *node_->rhs;
}

const Formula& Formula::child() const {
  if (kind() != Kind::Not && kind() != Kind::Exists) throw std::logic_error("Formula::child on wrong kind");
  return *node_->a;
}

const Formula& Formula::left() const {
  if (kind() != Kind::Or) throw std::logic_error("Formula::left on non-disjunction");
  return *node_->a;
}

const Formula& Formula::right() const {
  if (kind() != Kind::Or) throw std::logic_error("Formula::right on non-disjunction");
  return *node_->b;
}

VarIndex Formula::boundVar() const {
  if (kind() != Kind::Exists) throw std::logic_error("Formula::boundVar on non-quantifier");
  return node_->var;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Eq: return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Not: return child() == other.child();
    case Kind::Or: return left() == other.left() && right() == other.right();
    case Kind::Exists: return boundVar() == other.boundVar() && child() == other.child();
  }
  return false;
}

// ---- symbols ----------------------------------------------------------------

std::string toString(const Symbol& s) {
  using K = Symbol::Kind;
  switch (s.kind) {
    case K::Zero: return "0";
    case K::Succ: return "S";
    case K::Not: return "~";
    case K::Or: return "|";
    case K::Exists: return "E";
    case K::LParen: return "(";
    case K::RParen: return ")";
    case K::Eq: return "=";
    case K::Plus: return "+";
    case K::Times: return "*";
    case K::Var: return "x" + std::to_string(s.var);
  }
  return "?";
}

Term numeral(std::size_t n) {
  Term t = Term::zero();
  for (std::size_t i = 0; i < n; ++i) t = Term::succ(std::move(t));
  return t;
}

namespace {

void flatten(const Term& t, std::vector<Symbol>& out) {
  using K = Symbol::Kind;
  const Term* cur = &t;
  while (cur->kind() == Term::Kind::Succ) {
    out.push_back(Symbol::of(K::Succ));
    cur = &cur->child();
  }
  switch (cur->kind()) {
    case Term::Kind::Zero: out.push_back(Symbol::of(K::Zero)); break;
    case Term::Kind::Var: out.push_back(Symbol::variable(cur->varIndex())); break;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      out.push_back(Symbol::of(K::LParen));
      flatten(cur->left(), out);
      out.push_back(Symbol::of(cur->kind() == Term::Kind::Plus ? K::Plus : K::Times));
      flatten(cur->right(), out);
      out.push_back(Symbol::of(K::RParen));
      break;
    case Term::Kind::Succ: break;
  }
}

void flatten(const Formula& f, std::vector<Symbol>& out) {
  using K = Symbol::Kind;
  switch (f.kind()) {
    case Formula::Kind::Eq:
      flatten(f.lhs(), out);
      out.push_back(Symbol::of(K::Eq));
      flatten(f.rhs(), out);
      break;
    case Formula::Kind::Not:
      out.push_back(Symbol::of(K::Not));
      flatten(f.child(), out);
      break;
    case Formula::Kind::Or:
      out.push_back(Symbol::of(K::LParen));
      flatten(f.left(), out);
      out.push_back(Symbol::of(K::Or));
      flatten(f.right(), out);
      out.push_back(Symbol::of(K::RParen));
      break;
    case Formula::Kind::Exists:
      out.push_back(Symbol::of(K::Exists));
      out.push_back(Symbol::variable(f.boundVar()));
      out.push_back(Symbol::of(K::LParen));
      flatten(f.child(), out);
      out.push_back(Symbol::of(K::RParen));
      break;
  }
}

std::string renderSymbols(const std::vector<Symbol>& symbols) {
  std::string out;
  out.reserve(symbols.size());
  for (const Symbol& s : symbols) out += toString(s);
  return out;
}

// Recursive descent over a symbol stream. `offsets` maps symbol index to the
// position reported in errors (character offsets when parsing text).
class Parser {
 public:
  Parser(const std::vector<Symbol>& symbols, std::vector<std::size_t> offsets, std::size_t endOffset)
      : syms_(symbols), offsets_(std::move(offsets)), end_(endOffset) {}

  Term term() {
    using K = Symbol::Kind;
    std::size_t succs = 0;
    while (peekIs(K::Succ)) {
      ++pos_;
      ++succs;
    }
    Term base = atom();
    for (std::size_t i = 0; i < succs; ++i) base = Term::succ(std::move(base));
    return base;
  }

  Formula formula() {
    using K = Symbol::Kind;
    if (atEnd()) fail("expected formula");
    switch (syms_[pos_].kind) {
      case K::Not:
        ++pos_;
        return Formula::negation(formula());
      case K::Exists: {
        ++pos_;
        if (atEnd() || syms_[pos_].kind != K::Var) fail("expected variable after E");
        VarIndex v = syms_[pos_++].var;
        expect(K::LParen);
        Formula body = formula();
        expect(K::RParen);
        return Formula::exists(v, std::move(body));
      }
      case K::LParen:
        if (parenthesizedDisjunction()) {
          ++pos_;
          Formula l = formula();
          expect(K::Or);
          Formula r = formula();
          expect(K::RParen);
          return Formula::disjunction(std::move(l), std::move(r));
        }
        [[fallthrough]];
      default: {
        Term l = term();
        expect(K::Eq);
        Term r = term();
        return Formula::eq(std::move(l), std::move(r));
      }
    }
  }

  void finish() {
    if (!atEnd()) fail("unexpected trailing input");
  }

 private:
  Term atom() {
    using K = Symbol::Kind;
    if (atEnd()) fail("expected term");
    const Symbol& s = syms_[pos_];
    switch (s.kind) {
      case K::Zero:
        ++pos_;
        return Term::zero();
      case K::Var:
        ++pos_;
        return Term::var(s.var);
      case K::LParen: {
        ++pos_;
        Term l = term();
        if (atEnd() || (syms_[pos_].kind != K::Plus && syms_[pos_].kind != K::Times)) fail("expected + or *");
        bool isPlus = syms_[pos_++].kind == K::Plus;
        Term r = term();
        expect(K::RParen);
        return isPlus ? Term::plus(std::move(l), std::move(r)) : Term::times(std::move(l), std::move(r));
      }
      default:
        fail("unexpected symbol '" + toString(s) + "' in term");
    }
  }

  // At "(": the first connective at nesting depth one decides between a
  // disjunction and a binary term.
  bool parenthesizedDisjunction() const {
    using K = Symbol::Kind;
    int depth = 0;
    for (std::size_t i = pos_; i < syms_.size(); ++i) {
      K k = syms_[i].kind;
      if (k == K::LParen) {
        ++depth;
      } else if (k == K::RParen) {
        if (--depth == 0) return false;
      } else if (depth == 1) {
        if (k == K::Or) return true;
        if (k == K::Plus || k == K::Times) return false;
      }
    }
    return false;
  }

  bool atEnd() const { return pos_ >= syms_.size(); }
  bool peekIs(Symbol::Kind k) const { return !atEnd() && syms_[pos_].kind == k; }

  void expect(Symbol::Kind k) {
    if (!peekIs(k)) fail("expected '" + toString(Symbol::of(k)) + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(pos_ < offsets_.size() ? offsets_[pos_] : end_, msg);
  }

  const std::vector<Symbol>& syms_;
  std::vector<std::size_t> offsets_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

bool isFormulaStream(const std::vector<Symbol>& syms) {
  using K = Symbol::Kind;
  for (const Symbol& s : syms)
    if (s.kind == K::Eq || s.kind == K::Not || s.kind == K::Or || s.kind == K::Exists) return true;
  return false;
}

std::pair<std::vector<Symbol>, std::vector<std::size_t>> lexWithOffsets(std::string_view text) {
  using K = Symbol::Kind;
  std::vector<Symbol> out;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t start = i;
    char c = text[i];
    K kind;
    switch (c) {
      case '0': kind = K::Zero; break;
      case 'S': kind = K::Succ; break;
      case '~': kind = K::Not; break;
      case '|': kind = K::Or; break;
      case 'E': kind = K::Exists; break;
      case '(': kind = K::LParen; break;
      case ')': kind = K::RParen; break;
      case '=': kind = K::Eq; break;
      case '+': kind = K::Plus; break;
      case '*': kind = K::Times; break;
      case 'x': {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw SyntaxError(i, "expected digits after x");
        // Canonical indices have no leading zeros.
        if (text[i] == '0' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))
          throw SyntaxError(i, "leading zero in variable index");
        std::uint64_t idx = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          idx = idx * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (idx > UINT32_MAX) throw SyntaxError(start, "variable index too large");
          ++i;
        }
        out.push_back(Symbol::variable(static_cast<VarIndex>(idx)));
        offsets.push_back(start);
        continue;
      }
      default:
        throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back(Symbol::of(kind));
    offsets.push_back(start);
    ++i;
  }
  return {std::move(out), std::move(offsets)};
}

Expression parseStream(const std::vector<Symbol>& syms, std::vector<std::size_t> offsets, std::size_t end) {
  Parser p(syms, std::move(offsets), end);
  if (isFormulaStream(syms)) {
    Formula f = p.formula();
    p.finish();
    return f;
  }
  Term t = p.term();
  p.finish();
  return t;
}

std::vector<std::size_t> identityOffsets(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Free-occurrence scan over the flattened formula, tracking binder scopes.
void collectFree(const Term& t, VarIndex v, std::multiset<VarIndex>& bound, std::size_t& pos,
                 std::vector<std::size_t>& out) {
  const Term* cur = &t;
  while (cur->kind() == Term::Kind::Succ) {
    ++pos;
    cur = &cur->child();
  }
  switch (cur->kind()) {
    case Term::Kind::Zero: ++pos; break;
    case Term::Kind::Var:
      if (cur->varIndex() == v && !bound.count(v)) out.push_back(pos);
      ++pos;
      break;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      ++pos;
      collectFree(cur->left(), v, bound, pos, out);
      ++pos;
      collectFree(cur->right(), v, bound, pos, out);
      ++pos;
      break;
    case Term::Kind::Succ: break;
  }
}

void collectFree(const Formula& f, VarIndex v, std::multiset<VarIndex>& bound, std::size_t& pos,
                 std::vector<std::size_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      collectFree(f.lhs(), v, bound, pos, out);
      ++pos;
      collectFree(f.rhs(), v, bound, pos, out);
      break;
    case Formula::Kind::Not:
      ++pos;
      collectFree(f.child(), v, bound, pos, out);
      break;
    case Formula::Kind::Or:
      ++pos;
      collectFree(f.left(), v, bound, pos, out);
      ++pos;
      collectFree(f.right(), v, bound, pos, out);
      ++pos;
      break;
    case Formula::Kind::Exists: {
      pos += 3;  // E, binder, (
      auto it = bound.insert(f.boundVar());
      collectFree(f.child(), v, bound, pos, out);
      bound.erase(it);
      ++pos;
      break;
    }
  }
}

void collectVars(const Term& t, std::set<VarIndex>& out) {
  const Term* cur = &t;
  while (cur->kind() == Term::Kind::Succ) cur = &cur->child();
  if (cur->kind() == Term::Kind::Var) out.insert(cur->varIndex());
  if (cur->kind() == Term::Kind::Plus || cur->kind() == Term::Kind::Times) {
    collectVars(cur->left(), out);
    collectVars(cur->right(), out);
  }
}

void collectFreeVars(const Formula& f, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      collectVars(f.lhs(), out);
      collectVars(f.rhs(), out);
      break;
    case Formula::Kind::Not: collectFreeVars(f.child(), out); break;
    case Formula::Kind::Or:
      collectFreeVars(f.left(), out);
      collectFreeVars(f.right(), out);
      break;
    case Formula::Kind::Exists: {
      std::set<VarIndex> inner;
      collectFreeVars(f.child(), inner);
      inner.erase(f.boundVar());
      out.insert(inner.begin(), inner.end());
      break;
    }
  }
}

}  // namespace

std::vector<Symbol> lex(std::string_view text) { return lexWithOffsets(text).first; }

Expression parse(std::string_view text) {
  auto [syms, offsets] = lexWithOffsets(text);
  if (syms.empty()) throw SyntaxError(0, "empty input");
  return parseStream(syms, std::move(offsets), text.size());
}

Term parseTerm(std::string_view text) {
  Expression e = parse(text);
  if (!std::holds_alternative<Term>(e)) throw SyntaxError(0, "expected a term, got a formula");
  return std::get<Term>(e);
}

Formula parseFormula(std::string_view text) {
  Expression e = parse(text);
  if (!std::holds_alternative<Formula>(e)) throw SyntaxError(0, "expected a formula, got a term");
  return std::get<Formula>(e);
}

Expression parseSymbols(const std::vector<Symbol>& symbols) {
  if (symbols.empty()) throw SyntaxError(0, "empty symbol sequence");
  return parseStream(symbols, identityOffsets(symbols.size()), symbols.size());
}

std::vector<Symbol> symbolsOf(const Term& t) {
  std::vector<Symbol> out;
  flatten(t, out);
  return out;
}

std::vector<Symbol> symbolsOf(const Formula& f) {
  std::vector<Symbol> out;
  flatten(f, out);
  return out;
}

std::vector<Symbol> symbolsOf(const Expression& e) {
  return std::visit([](const auto& n) { return symbolsOf(n); }, e);
}

std::string render(const Term& t) { return renderSymbols(symbolsOf(t)); }
std::string render(const Formula& f) { return renderSymbols(symbolsOf(f)); }
std::string render(const Expression& e) { return renderSymbols(symbolsOf(e)); }

std::size_t symbolCount(const Expression& e) { return symbolsOf(e).size(); }

std::set<VarIndex> freeVariables(const Expression& e) {
  std::set<VarIndex> out;
  if (const Term* t = std::get_if<Term>(&e))
    collectVars(*t, out);
  else
    collectFreeVars(std::get<Formula>(e), out);
  return out;
}

std::vector<std::size_t> freeOccurrences(const Expression& e, VarIndex v) {
  std::vector<std::size_t> out;
  std::multiset<VarIndex> bound;
  std::size_t pos = 0;
  std::visit([&](const auto& n) { collectFree(n, v, bound, pos, out); }, e);
  return out;
}

Term substitute(const Term& t, VarIndex v, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Zero: return t;
    case Term::Kind::Var: return t.varIndex() == v ? replacement : t;
    case Term::Kind::Succ: {
      std::size_t depth = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        ++depth;
        cur = &cur->child();
      }
      Term inner = substitute(*cur, v, replacement);
      for (std::size_t i = 0; i < depth; ++i) inner = Term::succ(std::move(inner));
      return inner;
    }
    case Term::Kind::Plus:
      return Term::plus(substitute(t.left(), v, replacement), substitute(t.right(), v, replacement));
    case Term::Kind::Times:
      return Term::times(substitute(t.left(), v, replacement), substitute(t.right(), v, replacement));
  }
  return t;
}

Formula substitute(const Formula& f, VarIndex v, const Term& replacement) {
  if (!isClosed(replacement)) throw std::invalid_argument("substitute: formula replacement must be a closed term");
  switch (f.kind()) {
    case Formula::Kind::Eq: return Formula::eq(substitute(f.lhs(), v, replacement), substitute(f.rhs(), v, replacement));
    case Formula::Kind::Not: return Formula::negation(substitute(f.child(), v, replacement));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(f.left(), v, replacement), substitute(f.right(), v, replacement));
    case Formula::Kind::Exists:
      if (f.boundVar() == v) return f;
      return Formula::exists(f.boundVar(), substitute(f.child(), v, replacement));
  }
  return f;
}

Expression substitute(const Expression& e, VarIndex v, const Term& replacement) {
  if (const Term* t = std::get_if<Term>(&e)) return substitute(*t, v, replacement);
  return substitute(std::get<Formula>(e), v, replacement);
}

bool isClosed(const Term& t) { return freeVariables(Expression(t)).empty(); }

}  // namespace selfref
