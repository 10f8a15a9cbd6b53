#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "selfref/encoding.hpp"
#include "selfref/numerics.hpp"

namespace selfref {

class RecursionLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Code of the numeral k_n (Num / Z). Exact while the scheme can produce it,
/// otherwise the certified floor for n + 1 symbols.
Magnitude Z(const Natural& n, const EncodingScheme& scheme);

/// Z lifted to magnitudes: a floor argument yields the floor for a numeral
/// with at least floorValue() + 1 symbols.
Magnitude Z(const Magnitude& n, const EncodingScheme& scheme);

/// True iff x is a variable code, i.e. a prime above 13.
bool Vble(const Natural& x);

// ---- the one-variable Sub(x, Num(x)) ------------------------------------------

enum class SubReading {
  /// The inner Num keeps the outermost argument, as printed.
  OuterNum,
  /// Each recursive call recomputes Num from its own argument.
  Recompute,
};

const char* toString(SubReading r);
SubReading parseSubReading(std::string_view text);  // "outer-num" | "recompute"

enum class SubCase { Variable, Pair, Otherwise };

const char* toString(SubCase c);

/// The pair <a, b> as the 2-element sequence code of the scheme, and its
/// projections when x is such a code.
Natural pairCode(const Natural& a, const Natural& b, const EncodingScheme& scheme);
std::optional<std::pair<Natural, Natural>> asPair(const Natural& x, const EncodingScheme& scheme);

struct SubStep {
  std::size_t depth;
  Natural argument;
  SubCase tag;
  /// Natural that Num was applied to (Variable case only).
  std::optional<Natural> numOf;
};

struct SubTrace {
  SubReading reading;
  std::vector<SubStep> steps;
  Magnitude result = Magnitude::exact(0);
  /// Set when the result is only a floor: the value exists but could not be
  /// written out.
  bool divergencePending = false;
};

inline constexpr std::size_t kDefaultSubDepthLimit = 256;

/// The three-case definition: Num(x) for variables, <(a)_0, Sub((a)_1, .)>
/// for pair codes, x otherwise. Throws RecursionLimitExceeded past
/// `depthLimit` pair unfoldings.
SubTrace subPaper(const Natural& x, const EncodingScheme& scheme, SubReading reading = SubReading::Recompute,
                  std::size_t depthLimit = kDefaultSubDepthLimit);

// ---- substitution on codes ----------------------------------------------------
//
// These act on codes of the given scheme (prime by default). Free-occurrence
// questions are answered by decoding to the syntax tree.

/// Replaces the n-th element of x's sequence by y's whole sequence.
Natural Su(const Natural& x, std::size_t n, const Natural& y, const EncodingScheme& scheme = PrimeScheme());

/// z <= Pr(l(x)+l(y))^(x+y), certified from bit lengths (prime scheme).
bool suBoundHolds(const Natural& x, const Natural& y, const Natural& z);

/// Left-based 1-indexed position of the (k+1)-th free occurrence of variable
/// code v, counted from the right end.
std::size_t St(std::size_t k, const Natural& v, const Natural& x, const EncodingScheme& scheme = PrimeScheme());

/// Number of free occurrences of variable code v in the expression coded by x.
std::size_t A(const Natural& v, const Natural& x, const EncodingScheme& scheme = PrimeScheme());

/// Sb_k iterated A(v,x) times: every free v replaced by y's sequence.
Natural Sb(const Natural& x, const Natural& v, const Natural& y, const EncodingScheme& scheme = PrimeScheme());

/// Sb(x, v, Z(x)). Exact when the result materializes, else the floor for
/// l(x) - A + A * (x + 1) symbols.
Magnitude diagonalCode(const Natural& x, const Natural& v, const EncodingScheme& scheme);

}  // namespace selfref
