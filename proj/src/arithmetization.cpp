#include "selfref/arithmetization.hpp"

#include <functional>

namespace selfref {

Magnitude Z(const Natural& n, const EncodingScheme& scheme) { return scheme.numeralCode(n); }

Magnitude Z(const Magnitude& n, const EncodingScheme& scheme) {
  if (n.isExact()) return Z(n.value(), scheme);
  return scheme.certifiedFloor(n.floorValue() + 1);
}

bool Vble(const Natural& x) { return x > 13 && isPrime(x); }

const char* toString(SubReading r) { return r == SubReading::OuterNum ? "outer-num" : "recompute"; }

SubReading parseSubReading(std::string_view text) {
  if (text == "outer-num") return SubReading::OuterNum;
  if (text == "recompute") return SubReading::Recompute;
  throw std::invalid_argument("unknown sub reading '" + std::string(text) + "' (expected outer-num or recompute)");
}

const char* toString(SubCase c) {
  switch (c) {
    case SubCase::Variable: return "variable";
    case SubCase::Pair: return "pair";
    case SubCase::Otherwise: return "otherwise";
  }
  return "otherwise";
}

Natural pairCode(const Natural& a, const Natural& b, const EncodingScheme& scheme) {
  const Natural seq[] = {a, b};
  return scheme.encodeSeq(seq);
}

std::optional<std::pair<Natural, Natural>> asPair(const Natural& x, const EncodingScheme& scheme) {
  if (scheme.name() == "beta" && beta(x, 0) != 2) return std::nullopt;
  std::vector<Natural> seq;
  try {
    if (!scheme.isCanonical(x)) return std::nullopt;
    seq = scheme.decodeSeq(x);
  } catch (const InvalidCode&) {
    return std::nullopt;
  }
  if (seq.size() != 2) return std::nullopt;
  return std::pair{seq[0], seq[1]};
}

SubTrace subPaper(const Natural& x, const EncodingScheme& scheme, SubReading reading, std::size_t depthLimit) {
  SubTrace trace{reading, {}, Magnitude::exact(0), false};

  std::function<Magnitude(const Natural&, std::size_t)> sub = [&](const Natural& y, std::size_t depth) -> Magnitude {
    if (depth > depthLimit)
      throw RecursionLimitExceeded("Sub recursion passed depth " + std::to_string(depthLimit));
    if (Vble(y)) {
      const Natural& numOf = reading == SubReading::Recompute ? y : x;
      trace.steps.push_back({depth, y, SubCase::Variable, numOf});
      return Z(numOf, scheme);
    }
    if (auto pair = asPair(y, scheme)) {
      trace.steps.push_back({depth, y, SubCase::Pair, std::nullopt});
      Magnitude inner = sub(pair->second, depth + 1);
      if (inner.isExact()) {
        const Natural seq[] = {pair->first, inner.value()};
        return scheme.encodeOrFloor(seq);
      }
      const Magnitude entries[] = {Magnitude::exact(pair->first), inner};
      return scheme.sequenceFloor(entries);
    }
    trace.steps.push_back({depth, y, SubCase::Otherwise, std::nullopt});
    return Magnitude::exact(y);
  };

  trace.result = sub(x, 0);
  trace.divergencePending = !trace.result.isExact();
  return trace;
}

// ---- substitution on codes ----------------------------------------------------

Natural Su(const Natural& x, std::size_t n, const Natural& y, const EncodingScheme& scheme) {
  auto xs = scheme.decodeSeq(x);
  if (n < 1 || n > xs.size())
    throw OutOfRange("Su: position " + std::to_string(n) + " outside a sequence of length " +
                     std::to_string(xs.size()));
  auto ys = scheme.decodeSeq(y);
  std::vector<Natural> out;
  out.reserve(xs.size() - 1 + ys.size());
  out.insert(out.end(), xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n - 1));
  out.insert(out.end(), ys.begin(), ys.end());
  out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(n), xs.end());
  return scheme.encodeSeq(out);
}

bool suBoundHolds(const Natural& x, const Natural& y, const Natural& z) {
  const std::size_t len = seqLength(x) + seqLength(y);
  if (len == 0) return z <= 1;
  const Natural p = nthPrime(len);
  const Natural exponent = x + y;
  // z < 2^(bits(z)+1) <= 2^((x+y) * floor(log2 p)) <= p^(x+y).
  const Natural zBits = z == 0 ? Natural(0) : Natural(bitLength(z) + 1);
  if (zBits <= exponent * bitLength(p)) return true;
  if (exponent <= 4096) return z <= boost::multiprecision::pow(p, static_cast<unsigned>(exponent));
  return false;
}

namespace {

VarIndex variableIndexOf(const Natural& v) {
  if (!Vble(v)) throw InvalidCode(toDecimal(v) + " is not a variable code");
  auto s = symbolFromCode(v);
  if (!s) throw InvalidCode(toDecimal(v) + " is beyond the supported variable range");
  return s->var;
}

std::vector<std::size_t> freePositions(const Natural& v, const Natural& x, const EncodingScheme& scheme) {
  VarIndex idx = variableIndexOf(v);
  return freeOccurrences(decodeNode(scheme, x), idx);
}

}  // namespace

std::size_t A(const Natural& v, const Natural& x, const EncodingScheme& scheme) {
  return freePositions(v, x, scheme).size();
}

std::size_t St(std::size_t k, const Natural& v, const Natural& x, const EncodingScheme& scheme) {
  auto pos = freePositions(v, x, scheme);
  if (k >= pos.size())
    throw OutOfRange("St: asked for free occurrence " + std::to_string(k) + " from the right, only " +
                     std::to_string(pos.size()) + " exist");
  return pos[pos.size() - 1 - k] + 1;
}

Natural Sb(const Natural& x, const Natural& v, const Natural& y, const EncodingScheme& scheme) {
  const std::size_t count = A(v, x, scheme);
  Natural cur = x;
  // Positions are taken in the original x, rightmost first, so the earlier
  // (left) positions are unaffected by each splice.
  for (std::size_t k = 0; k < count; ++k) cur = Su(cur, St(k, v, x, scheme), y, scheme);
  return cur;
}

Magnitude diagonalCode(const Natural& x, const Natural& v, const EncodingScheme& scheme) {
  const std::size_t occurrences = A(v, x, scheme);
  if (occurrences == 0) return Magnitude::exact(x);
  const Natural length = scheme.length(x);
  const Natural symbols = length - occurrences + Natural(occurrences) * (x + 1);

  Magnitude zx = Z(x, scheme);
  if (!zx.isExact()) return scheme.certifiedFloor(symbols);
  if (symbols > scheme.options().maxCodeBits) return scheme.certifiedFloor(symbols);
  try {
    return Magnitude::exact(Sb(x, v, zx.value(), scheme));
  } catch (const SearchLimitExceeded&) {
    return scheme.certifiedFloor(symbols);
  }
}

}  // namespace selfref
