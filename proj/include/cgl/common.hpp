#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cgl {

inline constexpr int kElemSlots = 12;

/// Fixed-size element encoding shared by every group family: permutation
/// image arrays, canonicalized 2x2 matrix entries, residues, residue pairs.
/// Unused slots stay zero so equality and hashing see a canonical value.
using Elem = std::array<int16_t, kElemSlots>;

struct ElemHash {
  std::size_t operator()(const Elem& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int16_t x : e) {
      h ^= static_cast<std::uint16_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Parameter or grammar violation. The CLI maps these to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical precondition or hypothesis failure. Exit code 1.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Deterministic RNG used wherever sampling is called for.
inline std::mt19937 seeded_rng(std::uint32_t seed) { return std::mt19937(seed); }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Factors q as p^k with p prime; returns false if q is not a prime power.
inline bool prime_power(std::uint64_t q, std::uint64_t& p, int& k) {
  if (q < 2) return false;
  std::uint64_t base = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  p = base;
  k = 0;
  while (q > 1) {
    if (q % p != 0) return false;
    q /= p;
    ++k;
  }
  return true;
}

inline std::uint64_t modpow(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

}  // namespace cgl
