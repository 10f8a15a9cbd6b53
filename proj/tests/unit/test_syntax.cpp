#include <doctest.h>

#include "selfref/syntax.hpp"

using namespace selfref;

TEST_CASE("numerals") {
  CHECK(numeral(0) == Term::zero());
  CHECK(numeral(2) == Term::succ(Term::succ(Term::zero())));
  CHECK(render(numeral(2)) == "SS0");
  CHECK(render(numeral(3)) == "SSS0");
  CHECK(symbolCount(numeral(5)) == 6);
  CHECK(symbolCount(numeral(100000)) == 100001);  // deep chains do not recurse
}

TEST_CASE("parse") {
  CHECK(std::get<Term>(parse("S0")) == Term::succ(Term::zero()));
  CHECK(std::get<Term>(parse("(x0+S0)")) == Term::plus(Term::var(0), Term::succ(Term::zero())));
  CHECK(std::get<Formula>(parse("Ex0(x0=Sx1)")) ==
        Formula::exists(0, Formula::eq(Term::var(0), Term::succ(Term::var(1)))));
  CHECK(std::get<Formula>(parse("~(x0=0|0=x0)")).kind() == Formula::Kind::Not);
  CHECK(std::get<Term>(parse("(x12*SS0)")).left().varIndex() == 12);
}

TEST_CASE("parse rejects malformed text") {
  for (const char* bad : {"S(", "", "x", "x01", "(0+0", "0=", "Ex0x0=0", "(0=0|0)", "S0 0", "Ex0(0)", "#"})
    CHECK_THROWS_AS(parse(bad), SyntaxError);
  CHECK_THROWS_AS(parseTerm("0=0"), SyntaxError);
  CHECK_THROWS_AS(parseFormula("S0"), SyntaxError);
}

TEST_CASE("render is canonical and parse inverts it") {
  CHECK(render(Term::succ(Term::zero())) == "S0");
  CHECK(render(Formula::exists(0, Formula::eq(Term::var(0), Term::zero()))) == "Ex0(x0=0)");
  for (const char* text : {"0", "Sx3", "((x0+0)*SSx1)", "x0=0", "~x0=S0", "(0=0|~Ex2(x2=x1))", "Ex0(Ex1(x0=x1))"}) {
    Expression e = parse(text);
    CHECK(render(e) == text);
    CHECK(parseSymbols(symbolsOf(e)) == e);
  }
}

TEST_CASE("symbolsOf") {
  using K = Symbol::Kind;
  CHECK(symbolsOf(Term::succ(Term::zero())) == std::vector<Symbol>{Symbol::of(K::Succ), Symbol::of(K::Zero)});
  CHECK(symbolsOf(numeral(2)) ==
        std::vector<Symbol>{Symbol::of(K::Succ), Symbol::of(K::Succ), Symbol::of(K::Zero)});
  CHECK(symbolsOf(Term::plus(Term::var(0), Term::zero())) ==
        std::vector<Symbol>{Symbol::of(K::LParen), Symbol::variable(0), Symbol::of(K::Plus), Symbol::of(K::Zero),
                            Symbol::of(K::RParen)});
}

TEST_CASE("free occurrences") {
  CHECK(freeOccurrences(parse("(x0+x0)"), 0) == std::vector<std::size_t>{1, 3});
  CHECK(freeOccurrences(parse("Ex0(x0=0)"), 0).empty());
  CHECK(freeOccurrences(parse("(x0=0|Ex0(x0=x1))"), 0) == std::vector<std::size_t>{1});
  CHECK(freeVariables(parse("Ex0(x0=x1)")) == std::set<VarIndex>{1});
}

TEST_CASE("substitute") {
  CHECK(substitute(Term::succ(Term::var(0)), 0, Term::zero()) == Term::succ(Term::zero()));
  CHECK(substitute(parseFormula("Ex0(x0=x1)"), 1, Term::zero()) == parseFormula("Ex0(x0=0)"));
  CHECK(substitute(parseFormula("Ex0(x0=0)"), 0, numeral(2)) == parseFormula("Ex0(x0=0)"));
  CHECK_THROWS_AS(substitute(parseFormula("x0=0"), 0, Term::var(1)), std::invalid_argument);
  CHECK(isClosed(numeral(4)));
  CHECK_FALSE(isClosed(parseTerm("Sx0")));
}
