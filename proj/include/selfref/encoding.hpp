#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfref/numerics.hpp"
#include "selfref/syntax.hpp"

namespace selfref {

class InvalidCode : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- symbol codes -------------------------------------------------------------
//
// Basic symbols get odd codes below 15, the arithmetic extensions get odd
// composites, and variable x_i gets the (i+1)-th prime above 13, so "is a
// variable code" is exactly "is a prime > 13".

inline constexpr unsigned kZeroCode = 1;
inline constexpr unsigned kSuccCode = 3;
inline constexpr unsigned kNotCode = 5;
inline constexpr unsigned kOrCode = 7;
inline constexpr unsigned kExistsCode = 9;
inline constexpr unsigned kLParenCode = 11;
inline constexpr unsigned kRParenCode = 13;
inline constexpr unsigned kEqCode = 15;
inline constexpr unsigned kPlusCode = 21;
inline constexpr unsigned kTimesCode = 25;

Natural symbolCode(const Symbol& s);
Natural variableCode(VarIndex i);

/// Inverse of symbolCode; nullopt for numbers that code no symbol.
std::optional<Symbol> symbolFromCode(const Natural& c);

std::vector<Natural> symbolCodes(const std::vector<Symbol>& symbols);
std::vector<Symbol> symbolsFromCodes(std::span<const Natural> codes);  // throws InvalidCode

// ---- prime-power sequence algebra -------------------------------------------

/// prod_i nthPrime(i)^codes[i] over 1-indexed positions.
Natural primeEncode(std::span<const Natural> codes);
std::vector<Natural> primeDecode(const Natural& x);
Natural Gl(std::size_t n, const Natural& x);
std::size_t seqLength(const Natural& x);
Natural concatCodes(const Natural& x, const Natural& y);
/// Code of the one-element sequence [c], i.e. 2^c.
Natural R(const Natural& c);

// ---- beta function ------------------------------------------------------------

inline constexpr std::uint64_t kDefaultMuCutoff = 5'000'000;

Natural cantorPair(const Natural& u, const Natural& v);
std::pair<Natural, Natural> cantorUnpair(const Natural& x);

/// remainder(u, 1 + (i+1) v) where x = cantorPair(u, v).
Natural beta(const Natural& x, const Natural& i);

/// Least x with beta(x,0) = a.size() and beta(x,i) = a[i-1]. Scans x upward
/// from 0 and throws SearchLimitExceeded once x reaches `cutoff`.
Natural seqNumber(std::span<const Natural> a, std::uint64_t cutoff = kDefaultMuCutoff);

/// A (usually non-minimal) x satisfying the same conjuncts, built by the
/// Chinese remainder theorem.
Natural seqWitness(std::span<const Natural> a);

/// Smallest candidate the mu-search could possibly return for `a`; every
/// x below it fails at least one conjunct.
Natural seqNumberLowerBound(std::span<const Natural> a);

// ---- schemes ------------------------------------------------------------------

struct SchemeOptions {
  std::uint64_t muCutoff = kDefaultMuCutoff;
  /// Prime-scheme codes above this many bits are reported as floors.
  std::uint64_t maxCodeBits = 1u << 18;
};

/// Maps symbol-code sequences to naturals. Implementations hold only
/// idempotent caches and are safe to share.
class EncodingScheme {
 public:
  virtual ~EncodingScheme() = default;

  virtual std::string_view name() const = 0;
  const SchemeOptions& options() const { return opts_; }

  virtual Natural encodeSeq(std::span<const Natural> codes) const = 0;
  virtual std::vector<Natural> decodeSeq(const Natural& x) const = 0;
  /// 1-indexed element; throws OutOfRange past the end.
  virtual Natural elementAt(std::size_t i, const Natural& x) const;
  virtual std::size_t length(const Natural& x) const;
  virtual Natural concatSeq(const Natural& x, const Natural& y) const;
  Natural singleton(const Natural& c) const { return encodeSeq(std::span(&c, 1)); }

  /// True when x is the code this scheme assigns to its own decoding.
  virtual bool isCanonical(const Natural& x) const = 0;

  /// Floor on the code of any sequence with `symbolCount` entries, computed
  /// without materializing the code.
  virtual Magnitude certifiedFloor(const Natural& symbolCount) const = 0;

  /// Floor on the code of a sequence whose entries are only known as
  /// magnitudes.
  virtual Magnitude sequenceFloor(std::span<const Magnitude> entries) const = 0;

  /// Exact code when it can be produced within the scheme's limits, the
  /// certifiedFloor for the sequence length otherwise.
  virtual Magnitude encodeOrFloor(std::span<const Natural> codes) const = 0;

  /// Code of the sequence S^(n + leadingSucc) 0, i.e. of "S...S k_n".
  virtual Magnitude numeralCode(const Natural& n, std::size_t leadingSucc = 0) const = 0;

 protected:
  explicit EncodingScheme(SchemeOptions opts) : opts_(opts) {}

 private:
  SchemeOptions opts_;
};

class PrimeScheme final : public EncodingScheme {
 public:
  explicit PrimeScheme(SchemeOptions opts = {}) : EncodingScheme(opts) {}

  std::string_view name() const override { return "prime"; }
  Natural encodeSeq(std::span<const Natural> codes) const override { return primeEncode(codes); }
  std::vector<Natural> decodeSeq(const Natural& x) const override { return primeDecode(x); }
  Natural concatSeq(const Natural& x, const Natural& y) const override { return concatCodes(x, y); }
  bool isCanonical(const Natural& x) const override;
  Magnitude certifiedFloor(const Natural& symbolCount) const override;
  Magnitude sequenceFloor(std::span<const Magnitude> entries) const override;
  Magnitude encodeOrFloor(std::span<const Natural> codes) const override;
  Magnitude numeralCode(const Natural& n, std::size_t leadingSucc = 0) const override;
};

class BetaScheme final : public EncodingScheme {
 public:
  explicit BetaScheme(SchemeOptions opts = {}) : EncodingScheme(opts) {}

  std::string_view name() const override { return "beta"; }
  Natural encodeSeq(std::span<const Natural> codes) const override { return seqNumber(codes, options().muCutoff); }
  std::vector<Natural> decodeSeq(const Natural& x) const override;
  bool isCanonical(const Natural& x) const override;
  Magnitude certifiedFloor(const Natural& symbolCount) const override;
  Magnitude sequenceFloor(std::span<const Magnitude> entries) const override;
  Magnitude encodeOrFloor(std::span<const Natural> codes) const override;
  Magnitude numeralCode(const Natural& n, std::size_t leadingSucc = 0) const override;
};

/// "prime" or "beta"; throws std::invalid_argument otherwise.
std::unique_ptr<EncodingScheme> makeScheme(std::string_view name, SchemeOptions opts = {});

Natural encodeNode(const EncodingScheme& scheme, const Expression& node);
Magnitude encodeNodeOrFloor(const EncodingScheme& scheme, const Expression& node);
Magnitude certifiedFloor(const EncodingScheme& scheme, const Natural& symbolCount);

/// Decodes a code into the expression it spells; InvalidCode when the
/// sequence is not a symbol string or does not parse.
Expression decodeNode(const EncodingScheme& scheme, const Natural& x);

}  // namespace selfref
