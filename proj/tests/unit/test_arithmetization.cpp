#include <doctest.h>

#include "oracles.hpp"
#include "selfref/arithmetization.hpp"
#include "terms.hpp"

using namespace selfref;

namespace {
std::vector<Natural> nat(std::initializer_list<unsigned> xs) { return {xs.begin(), xs.end()}; }
const Natural kZ8 = 23 * boost::multiprecision::pow(Natural(9699690), 3);
}  // namespace

TEST_CASE("Z") {
  PrimeScheme prime;
  CHECK(Z(Natural(0), prime) == Magnitude::exact(2));
  CHECK(Z(Natural(1), prime) == Magnitude::exact(24));
  CHECK(Z(Natural(8), prime) == Magnitude::exact(kZ8));
  CHECK(kZ8 == oracle::encode({3, 3, 3, 3, 3, 3, 3, 3, 1}));
  // Too large to write out: floor for n + 1 symbols.
  CHECK(Z(kZ8, prime) == Magnitude::lowerBoundLog2(kZ8 + 1));
  CHECK(Z(Magnitude::lowerBoundLog2(kZ8 + 1), prime).kind() == Magnitude::Kind::LowerBound);
}

TEST_CASE("Vble") {
  CHECK(Vble(17));
  CHECK_FALSE(Vble(3));
  CHECK_FALSE(Vble(15));
  CHECK_FALSE(Vble(13));
  CHECK_FALSE(Vble(2));
  for (unsigned x = 0; x < 5000; ++x) REQUIRE(Vble(x) == (x > 13 && oracle::isPrime(x)));
}

TEST_CASE("subPaper cases") {
  PrimeScheme prime;
  SubTrace t = subPaper(17, prime);
  CHECK(t.result == Z(Natural(17), prime));
  CHECK(t.steps.size() == 1);
  CHECK(t.steps[0].tag == SubCase::Variable);

  t = subPaper(3, prime);
  CHECK(t.result == Magnitude::exact(3));
  CHECK(t.steps[0].tag == SubCase::Otherwise);

  const Natural p = pairCode(1, 17, prime);
  t = subPaper(p, prime);
  CHECK(t.steps[0].tag == SubCase::Pair);
  CHECK(t.steps[1].tag == SubCase::Variable);
  // <1, Z(17)> has an exponent near 4e65, so only its floor can be returned.
  const Natural z17 = Z(Natural(17), prime).value();
  CHECK(t.result == prime.encodeOrFloor(std::vector<Natural>{1, z17}));
  CHECK(compareCertified(t.result, Magnitude::exact(z17)) == Ordering::Greater);
  CHECK(t.divergencePending);

  // With an exact inner value the pair is rebuilt exactly: <1, 3> stays <1, 3>.
  const Natural q = pairCode(1, 3, prime);
  CHECK(subPaper(q, prime).result == Magnitude::exact(q));
}

TEST_CASE("subPaper readings differ only in what Num receives") {
  PrimeScheme prime;
  const Natural p = pairCode(3, 17, prime);
  SubTrace re = subPaper(p, prime, SubReading::Recompute);
  SubTrace outer = subPaper(p, prime, SubReading::OuterNum);
  CHECK(*re.steps.back().numOf == 17);
  CHECK(*outer.steps.back().numOf == p);
  CHECK(re.result == prime.encodeOrFloor(std::vector<Natural>{3, Z(Natural(17), prime).value()}));
  CHECK(outer.result == prime.sequenceFloor(std::vector<Magnitude>{Magnitude::exact(3), Z(p, prime)}));
  CHECK_FALSE(outer.result == re.result);
  CHECK(outer.divergencePending);
  CHECK(parseSubReading("outer-num") == SubReading::OuterNum);
  CHECK_THROWS_AS(parseSubReading("literal"), std::invalid_argument);
}

TEST_CASE("subPaper depth limit") {
  PrimeScheme prime;
  // <1, <1, 5>>: two pair unfoldings before the otherwise case.
  const Natural x = pairCode(1, pairCode(1, 5, prime), prime);
  CHECK(subPaper(x, prime, SubReading::Recompute, 2).result == Magnitude::exact(x));
  CHECK_THROWS_AS(subPaper(x, prime, SubReading::Recompute, 1), RecursionLimitExceeded);
}

TEST_CASE("subPaper case 1 agrees with Z on variable codes <= 200") {
  PrimeScheme prime;
  std::size_t variables = 0;
  for (unsigned x = 0; x <= 200; ++x) {
    if (!Vble(x)) continue;
    ++variables;
    SubTrace t = subPaper(x, prime);
    REQUIRE(t.steps.front().tag == SubCase::Variable);
    REQUIRE(t.result == Z(Natural(x), prime));
  }
  CHECK(variables == 40);  // primes in (13, 200]
}

TEST_CASE("Su") {
  CHECK(Su(primeEncode(nat({3, 17})), 2, 2) == 24);
  CHECK(Su(8, 1, 24) == 24);
  const Natural x = primeEncode(nat({11, 17, 21, 1, 13}));
  for (std::size_t n = 1; n <= 5; ++n) CHECK(Su(x, n, R(Gl(n, x))) == x);
  CHECK_THROWS_AS(Su(24, 3, 2), OutOfRange);
  CHECK_THROWS_AS(Su(24, 0, 2), OutOfRange);
  CHECK_THROWS_AS(Su(10, 1, 2), InvalidCode);
}

TEST_CASE("Su length law and bound") {
  std::vector<std::vector<Natural>> seqs;
  for (unsigned len = 1; len <= 3; ++len)
    for (unsigned a = 1; a <= 3; ++a) seqs.push_back(std::vector<Natural>(len, Natural(a)));
  seqs.push_back({});
  seqs.push_back(nat({1, 2, 3}));
  for (const auto& xs : seqs)
    for (const auto& ys : seqs) {
      if (xs.empty()) continue;
      const Natural x = primeEncode(xs), y = primeEncode(ys);
      for (std::size_t n = 1; n <= xs.size(); ++n) {
        const Natural z = Su(x, n, y);
        REQUIRE(seqLength(z) == xs.size() - 1 + ys.size());
        REQUIRE(suBoundHolds(x, y, z));
      }
    }
}

TEST_CASE("St and A") {
  const Natural sx0 = primeEncode(nat({3, 17}));
  const Natural sum = encodeNode(PrimeScheme(), parse("(x0+x0)"));
  CHECK(St(0, 17, sx0) == 2);
  CHECK(St(0, 17, sum) == 4);
  CHECK(St(1, 17, sum) == 2);
  CHECK_THROWS_AS(St(2, 17, sum), OutOfRange);
  CHECK(A(17, sx0) == 1);
  CHECK(A(17, encodeNode(PrimeScheme(), parse("Ex0(x0=0)"))) == 0);
  CHECK(A(17, 2) == 0);
  CHECK(A(17, sum) == 2);
  CHECK_THROWS_AS(A(15, sx0), InvalidCode);
  CHECK_THROWS_AS(A(17, 10), InvalidCode);
}

TEST_CASE("Sb") {
  PrimeScheme prime;
  const Natural sx0 = primeEncode(nat({3, 17}));
  CHECK(Sb(sx0, 17, 2) == 24);
  CHECK(Sb(encodeNode(prime, parse("(x0+x0)")), 17, 2) == encodeNode(prime, parse("(0+0)")));
  const Natural closed = encodeNode(prime, parse("Ex0(x0=S0)"));
  CHECK(Sb(closed, 17, 24) == closed);
  CHECK(Sb(sx0, 19, 24) == sx0);
}

TEST_CASE("numeric substitution commutes with symbolic substitution") {
  PrimeScheme prime;
  std::size_t triples = 0;
  for (const Term& t : gen::allTerms(7)) {
    for (VarIndex v : {VarIndex{0}, VarIndex{1}}) {
      if (freeOccurrences(Expression(t), v).empty()) continue;
      for (std::size_t m = 0; m <= 3; ++m) {
        const Natural lhs = Sb(encodeNode(prime, t), variableCode(v), encodeNode(prime, numeral(m)), prime);
        const Natural rhs = encodeNode(prime, substitute(t, v, numeral(m)));
        REQUIRE_MESSAGE(lhs == rhs, render(t) << " [x" << v << " := " << m << "]");
        ++triples;
      }
    }
  }
  CHECK(triples >= 50);
}

TEST_CASE("Sb leaves codes without free occurrences fixed") {
  PrimeScheme prime;
  for (const Term& t : gen::allTerms(6)) {
    if (!freeOccurrences(Expression(t), 1).empty()) continue;
    const Natural x = encodeNode(prime, t);
    REQUIRE(Sb(x, variableCode(1), 24) == x);
  }
}

TEST_CASE("Sb under the beta scheme") {
  BetaScheme b(SchemeOptions{100000000});
  const Natural sx0 = b.encodeSeq(nat({3, 17}));
  const Natural zero = b.encodeSeq(nat({1}));
  CHECK(Sb(sx0, 17, zero, b) == b.encodeSeq(nat({3, 1})));
}

TEST_CASE("diagonalCode") {
  PrimeScheme prime;
  const Natural sx0 = encodeNode(prime, parse("Sx0"));
  CHECK(sx0 == 8 * Natural(129140163));
  Magnitude d = diagonalCode(sx0, 17, prime);
  CHECK(d == prime.certifiedFloor(1 + sx0 + 1));
  CHECK(diagonalCode(24, 17, prime) == Magnitude::exact(24));
  const Natural x0 = encodeNode(prime, parse("x0"));
  CHECK(x0 == Natural(1) << 17);
  CHECK(diagonalCode(x0, 17, prime) == Z(x0, prime));
  // "(x0+x0)": two occurrences, each replaced by a numeral of x + 1 symbols.
  const Natural sum = encodeNode(prime, parse("(x0+x0)"));
  CHECK(diagonalCode(sum, 17, prime) == prime.certifiedFloor(5 - 2 + 2 * (sum + 1)));
}
