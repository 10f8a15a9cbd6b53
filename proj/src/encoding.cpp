#include "selfref/encoding.hpp"

#include <algorithm>
#include <optional>

namespace selfref {

namespace bmp = boost::multiprecision;

// ---- symbol codes -------------------------------------------------------------

Natural variableCode(VarIndex i) { return Natural(nthPrime(static_cast<std::size_t>(i) + 7)); }

Natural symbolCode(const Symbol& s) {
  using K = Symbol::Kind;
  switch (s.kind) {
    case K::Zero: return kZeroCode;
    case K::Succ: return kSuccCode;
    case K::Not: return kNotCode;
    case K::Or: return kOrCode;
    case K::Exists: return kExistsCode;
    case K::LParen: return kLParenCode;
    case K::RParen: return kRParenCode;
    case K::Eq: return kEqCode;
    case K::Plus: return kPlusCode;
    case K::Times: return kTimesCode;
    case K::Var: return variableCode(s.var);
  }
  return 0;
}

std::optional<Symbol> symbolFromCode(const Natural& c) {
  using K = Symbol::Kind;
  if (c > 13) {
    if (c == kEqCode) return Symbol::of(K::Eq);
    if (c == kPlusCode) return Symbol::of(K::Plus);
    if (c == kTimesCode) return Symbol::of(K::Times);
    // Variable indices stay desk-sized; larger primes code nothing here.
    constexpr std::uint64_t kMaxVariableCode = 20'000'000;
    if (c > kMaxVariableCode) return std::nullopt;
    std::size_t idx = primeIndex(static_cast<std::uint64_t>(c));
    if (idx == 0) return std::nullopt;
    return Symbol::variable(static_cast<VarIndex>(idx - 7));
  }
  switch (static_cast<unsigned>(c)) {
    case kZeroCode: return Symbol::of(K::Zero);
    case kSuccCode: return Symbol::of(K::Succ);
    case kNotCode: return Symbol::of(K::Not);
    case kOrCode: return Symbol::of(K::Or);
    case kExistsCode: return Symbol::of(K::Exists);
    case kLParenCode: return Symbol::of(K::LParen);
    case kRParenCode: return Symbol::of(K::RParen);
    default: return std::nullopt;
  }
}

std::vector<Natural> symbolCodes(const std::vector<Symbol>& symbols) {
  std::vector<Natural> out;
  out.reserve(symbols.size());
  for (const Symbol& s : symbols) out.push_back(symbolCode(s));
  return out;
}

std::vector<Symbol> symbolsFromCodes(std::span<const Natural> codes) {
  std::vector<Symbol> out;
  out.reserve(codes.size());
  for (const Natural& c : codes) {
    auto s = symbolFromCode(c);
    if (!s) throw InvalidCode(toDecimal(c) + " is not a symbol code");
    out.push_back(*s);
  }
  return out;
}

// ---- prime-power sequence algebra -------------------------------------------

namespace {

std::uint64_t smallExponent(const Natural& e) {
  if (e > Natural(1u << 31)) throw std::length_error("exponent " + toDecimal(e) + " too large to materialize");
  return static_cast<std::uint64_t>(e);
}

Natural productTree(std::vector<Natural>& factors, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return 1;
  if (hi - lo == 1) return factors[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return productTree(factors, lo, mid) * productTree(factors, mid, hi);
}

// prod nthPrime(offset + i + 1)^codes[i].
Natural primePowerProduct(std::span<const Natural> codes, std::size_t offset) {
  std::vector<Natural> factors;
  factors.reserve(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == 0) throw InvalidCode("prime-power codes require every entry to be at least 1");
    factors.push_back(bmp::pow(Natural(nthPrime(offset + i + 1)), static_cast<unsigned>(smallExponent(codes[i]))));
  }
  return productTree(factors, 0, factors.size());
}

// Upper estimate of the bit length of prod nthPrime(i+1)^codes[i], or
// nullopt when it already passes `limit`.
std::optional<Natural> estimatedBits(std::span<const Natural> codes, std::uint64_t limit) {
  if (codes.size() > limit) return std::nullopt;
  Natural bits = 0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    bits += codes[i] * (bitLength(Natural(nthPrime(i + 1))) + 1);
    if (bits > limit) return std::nullopt;
  }
  return bits;
}

}  // namespace

Natural primeEncode(std::span<const Natural> codes) { return primePowerProduct(codes, 0); }

std::vector<Natural> primeDecode(const Natural& x) {
  if (x == 0) throw InvalidCode("0 codes no sequence");
  std::vector<Natural> out;
  Natural rest = x;
  for (std::size_t i = 1; rest != 1; ++i) {
    std::uint64_t p = nthPrime(i);
    std::uint64_t e = 0;
    if (p == 2) {
      e = bmp::lsb(rest);
      rest >>= e;
    } else {
      Natural q, r;
      for (;;) {
        bmp::divide_qr(rest, Natural(p), q, r);
        if (r != 0) break;
        rest.swap(q);
        ++e;
      }
    }
    if (e == 0)
      throw InvalidCode(toDecimal(x) + " is not a sequence code: prime " + std::to_string(p) + " is skipped");
    out.emplace_back(e);
  }
  return out;
}

Natural Gl(std::size_t n, const Natural& x) {
  auto seq = primeDecode(x);
  if (n < 1 || n > seq.size())
    throw OutOfRange("element " + std::to_string(n) + " of a sequence of length " + std::to_string(seq.size()));
  return seq[n - 1];
}

std::size_t seqLength(const Natural& x) { return primeDecode(x).size(); }

Natural concatCodes(const Natural& x, const Natural& y) {
  std::size_t lx = seqLength(x);
  auto ys = primeDecode(y);
  return x * primePowerProduct(ys, lx);
}

Natural R(const Natural& c) {
  if (c == 0) throw InvalidCode("R: symbol numbers start at 1");
  return Natural(1) << static_cast<std::size_t>(smallExponent(c));
}

// ---- beta function ------------------------------------------------------------

Natural cantorPair(const Natural& u, const Natural& v) {
  Natural s = u + v;
  return s * (s + 1) / 2 + v;
}

std::pair<Natural, Natural> cantorUnpair(const Natural& x) {
  Natural s = (bmp::sqrt(Natural(8 * x + 1)) - 1) / 2;
  Natural v = x - s * (s + 1) / 2;
  return {s - v, v};
}

Natural beta(const Natural& x, const Natural& i) {
  auto [u, v] = cantorUnpair(x);
  return u % (1 + (i + 1) * v);
}

Natural seqNumberLowerBound(std::span<const Natural> a) {
  Natural n = a.size();
  Natural umin = n;
  Natural vmin = n;  // index 0 holds the length
  for (std::size_t i = 0; i < a.size(); ++i) {
    umin = std::max(umin, a[i]);
    Natural d = i + 2;
    vmin = std::max(vmin, Natural((a[i] + d - 1) / d));
  }
  return cantorPair(umin, vmin);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a modulo m for coprime a, m (m >= 1).
std::uint64_t inverse64(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 oldR = a % m, r = m, oldS = 1, s = 0;
  while (r != 0) {
    __int128 q = oldR / r;
    __int128 t = oldR - q * r;
    oldR = r;
    r = t;
    t = oldS - q * s;
    oldS = s;
    s = t;
  }
  __int128 inv = oldS % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

// Least u <= umax with u = want[j] (mod 1 + (j+1) v) for every j, if any.
std::optional<std::uint64_t> leastU(const std::vector<std::uint64_t>& want, std::uint64_t v, std::uint64_t umax) {
  std::uint64_t r = 0, M = 1;
  std::size_t j = 0;
  for (; j < want.size(); ++j) {
    const u128 m128 = 1 + static_cast<u128>(j + 1) * v;
    if (want[j] >= m128) return std::nullopt;
    if (M > umax) break;  // r is the only candidate left; check the rest directly
    const auto m = static_cast<std::uint64_t>(m128);
    const std::uint64_t g = gcd64(M, m);
    const std::uint64_t diff = (want[j] + m - r % m) % m;
    if (diff % g != 0) return std::nullopt;
    const std::uint64_t mg = m / g;
    const std::uint64_t t = static_cast<std::uint64_t>(static_cast<u128>(diff / g) * inverse64((M / g) % mg, mg) % mg);
    const u128 next = static_cast<u128>(r) + static_cast<u128>(M) * t;
    const u128 lcm = static_cast<u128>(M) * mg;
    if (next > umax) return std::nullopt;
    r = static_cast<std::uint64_t>(next);
    M = lcm > umax ? umax + 1 : static_cast<std::uint64_t>(lcm);
  }
  for (; j < want.size(); ++j) {
    const u128 m = 1 + static_cast<u128>(j + 1) * v;
    if (r % m != want[j]) return std::nullopt;
  }
  return r;
}

}  // namespace

Natural seqNumber(std::span<const Natural> a, std::uint64_t cutoff) {
  if (seqNumberLowerBound(a) >= cutoff)
    throw SearchLimitExceeded("mu-search for a sequence of length " + std::to_string(a.size()) +
                              " cannot finish below the cutoff " + std::to_string(cutoff));
  // Every entry is below the cutoff here, so they fit in 64 bits.
  std::vector<std::uint64_t> want;
  want.reserve(a.size() + 1);
  want.push_back(a.size());
  for (const Natural& e : a) want.push_back(static_cast<std::uint64_t>(e));

  // Same answer as scanning x = 0, 1, 2, ...: for each v the least admissible
  // u gives the least x on that column, and the minimum over v is the least x.
  auto pairOf = [](u128 u, u128 v) { return (u + v) * (u + v + 1) / 2 + v; };
  // Largest diagonal s that still has an x below cutoff.
  auto smax = static_cast<std::uint64_t>((bmp::sqrt(Natural(8) * cutoff + 1) - 1) / 2);
  while (smax > 0 && pairOf(smax, 0) >= cutoff) --smax;
  while (pairOf(smax + 1, 0) < cutoff) ++smax;
  u128 best = cutoff;
  for (std::uint64_t v = 0; v <= smax; ++v) {
    if (pairOf(0, v) >= best) break;
    auto u = leastU(want, v, smax - v);
    if (!u) continue;
    const u128 x = pairOf(*u, v);
    if (x < best) best = x;
  }
  if (best >= cutoff) throw SearchLimitExceeded("mu-search passed the cutoff " + std::to_string(cutoff));
  return Natural(static_cast<std::uint64_t>(best));
}

namespace {

Natural modInverse(const Natural& a, const Natural& m) {
  // Extended Euclid; cpp_int is signed so coefficients may go negative.
  Natural oldR = a % m, r = m;
  Natural oldS = 1, s = 0;
  while (r != 0) {
    Natural q = oldR / r;
    Natural t = oldR - q * r;
    oldR = r;
    r = t;
    t = oldS - q * s;
    oldS = s;
    s = t;
  }
  if (oldR != 1) throw std::logic_error("modInverse: arguments are not coprime");
  Natural inv = oldS % m;
  if (inv < 0) inv += m;
  return inv;
}

Natural factorial(std::size_t n) {
  Natural f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Natural seqWitness(std::span<const Natural> a) {
  const std::size_t n = a.size();
  Natural maxEntry = n;
  for (const Natural& e : a) maxEntry = std::max(maxEntry, e);

  // With (n+1)! | v the moduli 1 + (j+1) v, j = 0..n, are pairwise coprime;
  // v > every residue keeps each residue in range.
  Natural base = factorial(n + 1);
  Natural v = base * ((maxEntry + base) / base);

  Natural u = 0, modulus = 1;
  for (std::size_t j = 0; j <= n; ++j) {
    Natural d = 1 + Natural(j + 1) * v;
    Natural r = j == 0 ? Natural(n) : a[j - 1];
    // Lift u so that u = r (mod d), keeping earlier congruences.
    Natural delta = ((r - u % d) % d + d) % d;
    Natural t = (delta * modInverse(modulus % d, d)) % d;
    u += modulus * t;
    modulus *= d;
  }
  return cantorPair(u, v);
}

// ---- schemes ------------------------------------------------------------------

Natural EncodingScheme::elementAt(std::size_t i, const Natural& x) const {
  auto seq = decodeSeq(x);
  if (i < 1 || i > seq.size())
    throw OutOfRange("element " + std::to_string(i) + " of a sequence of length " + std::to_string(seq.size()));
  return seq[i - 1];
}

std::size_t EncodingScheme::length(const Natural& x) const { return decodeSeq(x).size(); }

Natural EncodingScheme::concatSeq(const Natural& x, const Natural& y) const {
  auto xs = decodeSeq(x);
  auto ys = decodeSeq(y);
  xs.insert(xs.end(), ys.begin(), ys.end());
  return encodeSeq(xs);
}

bool PrimeScheme::isCanonical(const Natural& x) const {
  try {
    primeDecode(x);
    return true;
  } catch (const InvalidCode&) {
    return false;
  }
}

Magnitude PrimeScheme::certifiedFloor(const Natural& symbolCount) const {
  // Every exponent is >= 1 and every base >= 2.
  return Magnitude::lowerBoundLog2(symbolCount);
}

Magnitude PrimeScheme::sequenceFloor(std::span<const Magnitude> entries) const {
  Natural sum = 0;
  for (const Magnitude& m : entries) sum += m.floorValue();
  return Magnitude::lowerBoundLog2(std::max(sum, Natural(entries.size())));
}

namespace {

Magnitude floorOfExactEntries(const EncodingScheme& scheme, std::span<const Natural> codes) {
  std::vector<Magnitude> entries;
  entries.reserve(codes.size());
  for (const Natural& c : codes) entries.push_back(Magnitude::exact(c));
  return scheme.sequenceFloor(entries);
}

}  // namespace

Magnitude PrimeScheme::encodeOrFloor(std::span<const Natural> codes) const {
  if (!estimatedBits(codes, options().maxCodeBits)) return floorOfExactEntries(*this, codes);
  return Magnitude::exact(primeEncode(codes));
}

Magnitude PrimeScheme::numeralCode(const Natural& n, std::size_t leadingSucc) const {
  const Natural succs = n + leadingSucc;
  const Natural symbols = succs + 1;
  // Each S contributes at least 3 bits.
  if (succs * 3 > options().maxCodeBits) return certifiedFloor(symbols);
  const auto m = static_cast<std::size_t>(succs);
  Natural bits = bitLength(Natural(nthPrime(m + 1))) + 1;
  std::vector<Natural> factors;
  factors.reserve(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    Natural p = nthPrime(i);
    bits += 3 * (bitLength(p) + 1);
    if (bits > options().maxCodeBits) return certifiedFloor(symbols);
    factors.push_back(p * p * p);
  }
  factors.emplace_back(nthPrime(m + 1));
  return Magnitude::exact(productTree(factors, 0, factors.size()));
}

std::vector<Natural> BetaScheme::decodeSeq(const Natural& x) const {
  Natural n = beta(x, 0);
  constexpr unsigned kMaxDecodedLength = 1u << 20;
  if (n > kMaxDecodedLength) throw InvalidCode("beta code " + toDecimal(x) + " declares length " + toDecimal(n));
  std::vector<Natural> out;
  for (unsigned i = 1; i <= static_cast<unsigned>(n); ++i) out.push_back(beta(x, i));
  return out;
}

bool BetaScheme::isCanonical(const Natural& x) const {
  auto seq = decodeSeq(x);
  // x itself satisfies every conjunct, so the search stops by x.
  Natural limit = std::min(Natural(x + 1), Natural(options().muCutoff));
  return seqNumber(seq, static_cast<std::uint64_t>(limit)) == x;
}

Magnitude BetaScheme::certifiedFloor(const Natural& symbolCount) const {
  // beta(x,0) = n together with beta(x,i) <= x - 1 forces x >= n + 1.
  return Magnitude::atLeast(symbolCount + 1);
}

Magnitude BetaScheme::sequenceFloor(std::span<const Magnitude> entries) const {
  Natural top = entries.size();
  for (const Magnitude& m : entries) top = std::max(top, m.floorValue());
  return Magnitude::atLeast(top + 1);
}

Magnitude BetaScheme::encodeOrFloor(std::span<const Natural> codes) const {
  try {
    return Magnitude::exact(seqNumber(codes, options().muCutoff));
  } catch (const SearchLimitExceeded&) {
    return floorOfExactEntries(*this, codes);
  }
}

Magnitude BetaScheme::numeralCode(const Natural& n, std::size_t leadingSucc) const {
  const Natural succs = n + leadingSucc;
  // The mu-search needs v >= length, so x >= 2 length^2 roughly.
  if (cantorPair(succs + 1, succs + 1) >= options().muCutoff) return certifiedFloor(succs + 1);
  std::vector<Natural> seq(static_cast<std::size_t>(succs), Natural(kSuccCode));
  seq.emplace_back(kZeroCode);
  return encodeOrFloor(seq);
}

std::unique_ptr<EncodingScheme> makeScheme(std::string_view name, SchemeOptions opts) {
  if (name == "prime") return std::make_unique<PrimeScheme>(opts);
  if (name == "beta") return std::make_unique<BetaScheme>(opts);
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected prime or beta)");
}

Natural encodeNode(const EncodingScheme& scheme, const Expression& node) {
  return scheme.encodeSeq(symbolCodes(symbolsOf(node)));
}

Magnitude encodeNodeOrFloor(const EncodingScheme& scheme, const Expression& node) {
  return scheme.encodeOrFloor(symbolCodes(symbolsOf(node)));
}

Magnitude certifiedFloor(const EncodingScheme& scheme, const Natural& symbolCount) {
  return scheme.certifiedFloor(symbolCount);
}

Expression decodeNode(const EncodingScheme& scheme, const Natural& x) {
  auto symbols = symbolsFromCodes(scheme.decodeSeq(x));
  try {
    return parseSymbols(symbols);
  } catch (const SyntaxError& e) {
    throw InvalidCode(toDecimal(x) + " does not code a well-formed expression (" + e.what() + ")");
  }
}

}  // namespace selfref
