#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgl/common.hpp"

namespace cgl {

namespace poly {

// Polynomials over F_p, coefficients ascending by degree, no trailing zeros.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<int>((r[i + j] + 1ll * a[i] * b[j]) % p);
  trim(r);
  return r;
}

/// Remainder of a modulo monic m.
inline Poly rem(Poly a, const Poly& m, int p) {
  trim(a);
  while (a.size() >= m.size()) {
    int lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      long long v = a[i + shift] - 1ll * lead * m[i];
      a[i + shift] = static_cast<int>(((v % p) + p) % p);
    }
    trim(a);
  }
  return a;
}

inline bool divides(const Poly& d, const Poly& a, int p) { return rem(a, d, p).empty(); }

/// Trial division by every monic polynomial of degree 1..deg(m)/2.
inline bool irreducible(const Poly& m, int p) {
  int k = static_cast<int>(m.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int deg = 1; 2 * deg <= k; ++deg) {
    std::vector<int> c(deg + 1, 0);
    c[deg] = 1;
    while (true) {
      if (divides(c, m, p)) return false;
      int i = 0;
      for (; i < deg; ++i) {
        if (++c[i] < p) break;
        c[i] = 0;
      }
      if (i == deg) break;
    }
  }
  return true;
}

}  // namespace poly

/// F_{p^k} with elements encoded as indices in [0, p^k): the element with
/// coefficients (c_0, ..., c_{k-1}) has index sum c_i p^i. Prime fields use
/// direct modular arithmetic; extensions precompute full add/mul tables.
class FiniteField {
 public:
  static FiniteField make(int p, int k, std::optional<poly::Poly> modulus = {}) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
      throw UsageError("field characteristic must be prime, got " + std::to_string(p));
    if (k < 1) throw UsageError("field degree must be >= 1");
    FiniteField f;
    f.p_ = p;
    f.k_ = k;
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= static_cast<std::uint64_t>(p);
    if (k > 1 && q > 1024) throw UsageError("extension field too large (p^k <= 1024)");
    f.q_ = static_cast<std::uint32_t>(q);
    if (k == 1) {
      f.modulus_ = {0, 1};
      if (modulus) throw UsageError("modulus only applies to extension fields");
    } else {
      if (modulus) {
        poly::Poly m = *modulus;
        poly::trim(m);
        if (static_cast<int>(m.size()) != k + 1 || m.back() != 1)
          throw UsageError("modulus must be monic of degree k");
        for (int c : m)
          if (c < 0 || c >= p) throw UsageError("modulus coefficients must lie in [0,p)");
        if (!poly::irreducible(m, p)) throw UsageError("supplied modulus is reducible");
        f.modulus_ = m;
      } else {
        f.modulus_ = first_irreducible(p, k);
      }
      f.build_tables();
    }
    return f;
  }

  int p() const { return p_; }
  int k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const poly::Poly& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return k_ == 1 ? (a + b) % q_ : add_[a * q_ + b];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t neg(std::uint32_t a) const {
    if (k_ == 1) return a == 0 ? 0 : q_ - a;
    return neg_[a];
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return k_ == 1 ? static_cast<std::uint32_t>(1ull * a * b % q_) : mul_[a * q_ + b];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw MathError("division by zero in F_" + std::to_string(q_));
    return pow(a, q_ - 2);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Embeds an integer via the prime subfield.
  std::uint32_t from_int(long long v) const {
    long long m = v % p_;
    if (m < 0) m += p_;
    return static_cast<std::uint32_t>(m);
  }

  bool is_square(std::uint32_t a) const {
    if (a == 0) return true;
    return pow(a, (q_ - 1) / 2) == 1;
  }

  /// x -> x^(p^(k/2)); requires even degree.
  std::uint32_t frobenius_half(std::uint32_t a) const {
    if (k_ % 2 != 0)
      throw UsageError("frobenius square root needs even field degree, got k=" + std::to_string(k_));
    std::uint64_t e = 1;
    for (int i = 0; i < k_ / 2; ++i) e *= static_cast<std::uint64_t>(p_);
    return pow(a, e);
  }

  std::string label(std::uint32_t a) const {
    if (k_ == 1) return std::to_string(a);
    // digit i of a in base p is the coefficient of t^i; print high degree first
    std::string s;
    std::vector<int> cs(k_);
    std::uint32_t v = a;
    for (int i = 0; i < k_; ++i) {
      cs[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    for (int i = k_ - 1; i >= 0; --i) {
      if (cs[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(cs[i]);
      } else {
        if (cs[i] != 1) s += std::to_string(cs[i]);
        s += "t";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s.empty() ? "0" : s;
  }

  static std::string modulus_string(const poly::Poly& m) {
    std::string s;
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(m[i]);
      } else {
        if (m[i] != 1) s += std::to_string(m[i]);
        s += "t";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  /// Lexicographically first monic irreducible of degree k: coefficient
  /// tuples (c_0, ..., c_{k-1}) ordered with c_0 most significant.
  static poly::Poly first_irreducible(int p, int k) {
    std::vector<int> c(k, 0);
    while (true) {
      poly::Poly m(c.begin(), c.end());
      m.push_back(1);
      if (poly::irreducible(m, p)) return m;
      int i = k - 1;
      for (; i >= 0; --i) {
        if (++c[i] < p) break;
        c[i] = 0;
      }
      if (i < 0) throw MathError("no irreducible polynomial found");  // unreachable
    }
  }

  poly::Poly decode(std::uint32_t a) const {
    poly::Poly r;
    for (int i = 0; i < k_; ++i) {
      r.push_back(static_cast<int>(a % p_));
      a /= p_;
    }
    poly::trim(r);
    return r;
  }
  std::uint32_t encode(const poly::Poly& a) const {
    std::uint32_t v = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
      int c = i < static_cast<int>(a.size()) ? a[i] : 0;
      v += static_cast<std::uint32_t>(c) * mult;
      mult *= static_cast<std::uint32_t>(p_);
    }
    return v;
  }

  void build_tables() {
    add_.resize(1ull * q_ * q_);
    mul_.resize(1ull * q_ * q_);
    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      poly::Poly pa = decode(a);
      for (std::uint32_t b = 0; b < q_; ++b) {
        poly::Poly pb = decode(b);
        poly::Poly s(std::max(pa.size(), pb.size()), 0);
        for (std::size_t i = 0; i < s.size(); ++i) {
          int va = i < pa.size() ? pa[i] : 0;
          int vb = i < pb.size() ? pb[i] : 0;
          s[i] = (va + vb) % p_;
        }
        poly::trim(s);
        add_[a * q_ + b] = encode(s);
        mul_[a * q_ + b] = encode(poly::rem(poly::mul(pa, pb, p_), modulus_, p_));
      }
      poly::Poly n = pa;
      for (auto& c : n) c = (p_ - c) % p_;
      poly::trim(n);
      neg_[a] = encode(n);
    }
  }

  int p_ = 0, k_ = 0;
  std::uint32_t q_ = 0;
  poly::Poly modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_;
};

/// Smallest positive i with i*i = -1 mod q; requires prime q = 1 mod 4.
inline std::uint32_t sqrt_minus_one(std::uint32_t q) {
  if (!is_prime(q) || q % 4 != 1)
    throw MathError("sqrt(-1) needs a prime q = 1 mod 4, got q=" + std::to_string(q));
  for (std::uint32_t i = 1; i < q; ++i)
    if (1ull * i * i % q == q - 1) return i;
  throw MathError("no square root of -1 mod " + std::to_string(q));  // unreachable
}

/// Euler criterion a^((q-1)/2) = 1 mod q; requires odd prime q, q does not divide a.
inline bool is_square_mod(long long a, std::uint32_t q) {
  if (!is_prime(q) || q == 2) throw MathError("is_square_mod needs an odd prime modulus");
  long long m = a % static_cast<long long>(q);
  if (m < 0) m += q;
  if (m == 0) throw MathError("is_square_mod: modulus divides argument");
  return modpow(static_cast<std::uint64_t>(m), (q - 1) / 2, q) == 1;
}

}  // namespace cgl
