#include "selfref/numerics.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace selfref {

namespace {

class PrimeCache {
 public:
  std::uint64_t nth(std::size_t n) {
    std::lock_guard lock(mu_);
    while (primes_.size() < n) extend();
    return primes_[n - 1];
  }

  std::size_t indexOf(std::uint64_t p) {
    std::lock_guard lock(mu_);
    while (primes_.back() < p) extend();
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    return (it != primes_.end() && *it == p) ? static_cast<std::size_t>(it - primes_.begin()) + 1 : 0;
  }

 private:
  void extend() {
    for (std::uint64_t c = primes_.back() + 1;; ++c) {
      bool prime = true;
      for (std::uint64_t q : primes_) {
        if (q * q > c) break;
        if (c % q == 0) {
          prime = false;
          break;
        }
      }
      if (prime) {
        primes_.push_back(c);
        return;
      }
    }
  }

  std::mutex mu_;
  std::vector<std::uint64_t> primes_{2};
};

PrimeCache& primeCache() {
  static PrimeCache cache;
  return cache;
}

// 2^e > v, decided from the bit length of v alone.
bool powerOfTwoExceeds(const Natural& e, const Natural& v) {
  if (v == 0) return true;
  return Natural(bitLength(v)) < e;
}

bool millerRabinWitness(const Natural& n, const Natural& a, const Natural& d, std::size_t s) {
  Natural x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (std::size_t r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t nthPrime(std::size_t n) {
  if (n == 0) throw std::invalid_argument("nthPrime: index is 1-based");
  return primeCache().nth(n);
}

std::size_t primeIndex(std::uint64_t p) {
  if (p < 2) return 0;
  return primeCache().indexOf(p);
}

std::size_t bitLength(const Natural& x) {
  return static_cast<std::size_t>(boost::multiprecision::msb(x));
}

bool isPrime(const Natural& x) {
  if (x < 2) return false;
  constexpr std::uint64_t kTrialLimit = 1000;
  for (std::size_t i = 1;; ++i) {
    std::uint64_t p = nthPrime(i);
    if (p > kTrialLimit) break;
    if (x == p) return true;
    if (x % p == 0) return false;
  }
  if (x < Natural(kTrialLimit) * kTrialLimit) return true;

  // Bases 2..41 are deterministic below 3.317e24.
  static const Natural kDeterministicBound("3317044064679887385961981");
  if (x >= kDeterministicBound)
    throw std::domain_error("isPrime: value beyond the deterministic range");

  Natural d = x - 1;
  std::size_t s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  static constexpr std::array<unsigned, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned a : kBases)
    if (millerRabinWitness(x, Natural(a), d, s)) return false;
  return true;
}

const Natural& Magnitude::value() const {
  if (kind_ != Kind::Exact) throw std::logic_error("Magnitude::value on a floor");
  return n_;
}

const Natural& Magnitude::exponent() const {
  if (kind_ != Kind::LowerBound) throw std::logic_error("Magnitude::exponent on a non-LowerBound");
  return n_;
}

Natural Magnitude::floorValue() const {
  switch (kind_) {
    case Kind::Exact:
    case Kind::AtLeast:
      return n_;
    case Kind::LowerBound:
      if (n_ <= kMaxExpandedExponent) return Natural(1) << static_cast<std::size_t>(n_);
      return n_ + 1;
  }
  return n_;
}

std::string Magnitude::toString() const {
  switch (kind_) {
    case Kind::Exact:
      return toDecimal(n_);
    case Kind::LowerBound:
      return ">= 2^" + toDecimal(n_);
    case Kind::AtLeast:
      return ">= " + toDecimal(n_);
  }
  return {};
}

const char* toString(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    case Ordering::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// Does the floor described by `bound` already exceed the exact value v?
bool floorExceeds(const Magnitude& bound, const Natural& v) {
  switch (bound.kind()) {
    case Magnitude::Kind::LowerBound: return powerOfTwoExceeds(bound.payload(), v);
    case Magnitude::Kind::AtLeast: return bound.payload() > v;
    case Magnitude::Kind::Exact: return bound.payload() > v;
  }
  return false;
}

Ordering flip(Ordering o) {
  if (o == Ordering::Less) return Ordering::Greater;
  if (o == Ordering::Greater) return Ordering::Less;
  return o;
}

Ordering compareNatural(const Natural& a, const Natural& b) {
  if (a < b) return Ordering::Less;
  if (a > b) return Ordering::Greater;
  return Ordering::Equal;
}

}  // namespace

Ordering compareCertified(const Magnitude& a, const Magnitude& b) {
  if (a.isExact() && b.isExact()) return compareNatural(a.payload(), b.payload());
  if (!a.isExact() && b.isExact()) return floorExceeds(a, b.payload()) ? Ordering::Greater : Ordering::Unknown;
  if (a.isExact() && !b.isExact()) return flip(compareCertified(b, a));
  return Ordering::Unknown;
}

Ordering compareFloors(const Magnitude& a, const Magnitude& b) {
  using K = Magnitude::Kind;
  const bool aPow = a.kind() == K::LowerBound;
  const bool bPow = b.kind() == K::LowerBound;
  if (aPow && bPow) return compareNatural(a.payload(), b.payload());
  if (!aPow && !bPow) return compareNatural(a.payload(), b.payload());
  if (!aPow) return flip(compareFloors(b, a));
  // a is 2^e, b is a plain natural v.
  const Natural& e = a.payload();
  const Natural& v = b.payload();
  if (powerOfTwoExceeds(e, v)) return Ordering::Greater;
  // 2^e <= v: equal exactly when v is that power of two.
  if (v != 0 && Natural(bitLength(v)) == e && boost::multiprecision::lsb(v) == bitLength(v)) return Ordering::Equal;
  return Ordering::Less;
}

Magnitude successor(const Magnitude& m) {
  switch (m.kind()) {
    case Magnitude::Kind::Exact: return Magnitude::exact(m.payload() + 1);
    case Magnitude::Kind::AtLeast: return Magnitude::atLeast(m.payload() + 1);
    case Magnitude::Kind::LowerBound: return m;
  }
  return m;
}

Natural parseNatural(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char c : text)
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal natural: " + text);
  return Natural(text);
}

std::string toDecimal(const Natural& n) { return n.str(); }

}  // namespace selfref
