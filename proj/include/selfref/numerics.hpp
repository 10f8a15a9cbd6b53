#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace selfref {

using Natural = boost::multiprecision::cpp_int;

/// The n-th prime, 1-indexed (nthPrime(1) == 2). Deterministic trial
/// division over a shared, append-only cache.
std::uint64_t nthPrime(std::size_t n);

/// 1-indexed position of p among the primes, or 0 when p is not prime.
/// Only intended for small p (it extends the prime cache up to p).
std::size_t primeIndex(std::uint64_t p);

/// Exact primality. Deterministic for every x below 3.3e24 (trial division
/// for small x, fixed-base Miller-Rabin above); throws std::domain_error for
/// larger x that have no small factor.
bool isPrime(const Natural& x);

/// Index of the most significant set bit; x must be nonzero.
std::size_t bitLength(const Natural& x);

/// A quantity that is either known exactly or only bounded from below.
///
/// LowerBound(e) means "the true value is at least 2^e" and is used for
/// prime-power codes whose digits cannot be materialized. AtLeast(v) means
/// "the true value is at least v" and covers linear floors such as the
/// beta-scheme bound x >= length + 1.
class Magnitude {
 public:
  enum class Kind { Exact, LowerBound, AtLeast };

  static Magnitude exact(Natural v) { return Magnitude(Kind::Exact, std::move(v)); }
  static Magnitude lowerBoundLog2(Natural e) { return Magnitude(Kind::LowerBound, std::move(e)); }
  static Magnitude atLeast(Natural v) { return Magnitude(Kind::AtLeast, std::move(v)); }

  Kind kind() const { return kind_; }
  bool isExact() const { return kind_ == Kind::Exact; }

  /// Exact value, AtLeast floor, or LowerBound exponent depending on kind().
  const Natural& payload() const { return n_; }
  const Natural& value() const;     // Exact only
  const Natural& exponent() const;  // LowerBound only

  /// A materializable natural that never exceeds the described quantity.
  /// For LowerBound(e) this is 2^e when e is small enough to expand and
  /// e + 1 (which is <= 2^e) otherwise.
  Natural floorValue() const;

  std::string toString() const;

  bool operator==(const Magnitude&) const = default;

 private:
  Magnitude(Kind k, Natural n) : kind_(k), n_(std::move(n)) {}
  Kind kind_;
  Natural n_;
};

/// Exponents up to this many bits are expanded by Magnitude::floorValue().
inline constexpr std::uint64_t kMaxExpandedExponent = 1u << 16;

enum class Ordering { Less, Equal, Greater, Unknown };

const char* toString(Ordering o);

/// Decides a <=> b only when the representations prove it. Exact vs Exact
/// always decides; a floor against an exact value decides only when the
/// floor already exceeds it; two floors are Unknown.
Ordering compareCertified(const Magnitude& a, const Magnitude& b);

/// Total order on the guaranteed floors themselves (Exact v -> v,
/// AtLeast v -> v, LowerBound e -> 2^e). Never Unknown.
Ordering compareFloors(const Magnitude& a, const Magnitude& b);

/// Adds one to the described quantity (floors stay sound).
Magnitude successor(const Magnitude& m);

/// Natural from a decimal string; throws std::invalid_argument.
Natural parseNatural(const std::string& text);
std::string toDecimal(const Natural& n);

}  // namespace selfref
