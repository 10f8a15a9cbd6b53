#pragma once
// Independent reference implementations the library is checked against.
// Deliberately naive: nothing here shares code with src/.

#include <cmath>
#include <cstdint>
#include <vector>

#include "selfref/numerics.hpp"

namespace oracle {

inline bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t nthPrime(std::size_t n) {
  std::uint64_t c = 1;
  while (n > 0) {
    ++c;
    if (isPrime(c)) --n;
  }
  return c;
}

/// Exponent of each successive prime 2, 3, 5, ... by repeated division.
inline std::vector<std::uint64_t> factorExponents(selfref::Natural x) {
  std::vector<std::uint64_t> out;
  std::uint64_t p = 2;
  while (x > 1) {
    std::uint64_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    out.push_back(e);
    do ++p;
    while (!isPrime(p));
  }
  return out;
}

/// Product of p_i^c_i by repeated multiplication.
inline selfref::Natural encode(const std::vector<std::uint64_t>& codes) {
  selfref::Natural x = 1;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::uint64_t p = nthPrime(i + 1);
    for (std::uint64_t k = 0; k < codes[i]; ++k) x *= p;
  }
  return x;
}

/// Straight from the formula: x = (u+v)(u+v+1)/2 + v, beta = u mod (1+(i+1)v).
inline std::uint64_t beta(std::uint64_t x, std::uint64_t i) {
  // largest s with s(s+1)/2 <= x, from a float guess corrected by steps
  auto s = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(x) + 1) - 1) / 2);
  while (s > 0 && s * (s + 1) / 2 > x) --s;
  while ((s + 1) * (s + 2) / 2 <= x) ++s;
  const std::uint64_t v = x - s * (s + 1) / 2;
  const std::uint64_t u = s - v;
  return u % (1 + (i + 1) * v);
}

/// Linear mu-search from 0; UINT64_MAX when nothing below cutoff.
inline std::uint64_t seqNumber(const std::vector<std::uint64_t>& a, std::uint64_t cutoff) {
  for (std::uint64_t x = 0; x < cutoff; ++x) {
    if (beta(x, 0) != a.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = beta(x, i + 1) == a[i];
    if (ok) return x;
  }
  return UINT64_MAX;
}

}  // namespace oracle
