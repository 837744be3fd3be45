#pragma once

#include <string>
#include <vector>

#include "cgl/graph.hpp"

namespace cgl {

/// Twists of the Gabber-Galil family on Z^2/nZ^2:
///   Swap    (a,b) -> (b,a)
///   NegSwap (a,b) -> (-b,-a)
///   NegX    (a,b) -> (-a,b)
///   NegY    (a,b) -> (a,-b)
///   Neg     (a,b) -> (-a,-b)
enum class GgTheta { None, Swap, NegSwap, NegX, NegY, Neg };

inline const char* gg_theta_tag(GgTheta t) {
  switch (t) {
    case GgTheta::None: return "none";
    case GgTheta::Swap: return "swap";
    case GgTheta::NegSwap: return "negswap";
    case GgTheta::NegX: return "negx";
    case GgTheta::NegY: return "negy";
    case GgTheta::Neg: return "neg";
  }
  return "?";
}

inline GgTheta gg_theta_from_tag(const std::string& s) {
  for (GgTheta t : {GgTheta::None, GgTheta::Swap, GgTheta::NegSwap, GgTheta::NegX, GgTheta::NegY,
                    GgTheta::Neg})
    if (s == gg_theta_tag(t)) return t;
  throw UsageError("unknown gg twist '" + s + "'");
}

inline std::pair<int, int> gg_theta_apply(GgTheta t, int a, int b, int n) {
  auto neg = [n](int v) { return (n - v) % n; };
  switch (t) {
    case GgTheta::None: return {a, b};
    case GgTheta::Swap: return {b, a};
    case GgTheta::NegSwap: return {neg(b), neg(a)};
    case GgTheta::NegX: return {neg(a), b};
    case GgTheta::NegY: return {a, neg(b)};
    case GgTheta::Neg: return {neg(a), neg(b)};
  }
  return {a, b};
}

/// The eight defining maps in fixed order: S, S^-1, T, T^-1, U, U^-1, V, V^-1
/// where S(a,b) = (a, a+b), T(a,b) = (a+b, b), U(a,b) = (a+1, b),
/// V(a,b) = (a, b+1).
inline std::pair<int, int> gg_phi_apply(int k, int a, int b, int n) {
  switch (k) {
    case 0: return {a, (a + b) % n};
    case 1: return {a, (b - a + n) % n};
    case 2: return {(a + b) % n, b};
    case 3: return {(a - b + n) % n, b};
    case 4: return {(a + 1) % n, b};
    case 5: return {(a - 1 + n) % n, b};
    case 6: return {a, (b + 1) % n};
    case 7: return {a, (b - 1 + n) % n};
  }
  throw std::logic_error("gg map index out of range");
}

inline std::vector<std::uint32_t> gg_theta_perm(int n, GgTheta t) {
  std::vector<std::uint32_t> p(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto [x, y] = gg_theta_apply(t, a, b, n);
      p[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint32_t>(x * n + y);
    }
  return p;
}

/// 8-regular Schreier-style graph on Z^2/nZ^2 with edges x -> theta(phi(x)).
inline VariantGraph build_gabber_galil(int n, GgTheta theta = GgTheta::None) {
  if (n < 2 || n > 316) throw UsageError("gg modulus must be in [2, 316]");
  auto group = build_group(Family::ProductCyclic, n);
  VariantGraph x;
  x.variant = Variant::Schreier;
  x.group = group;
  x.n = static_cast<std::uint32_t>(n) * n;
  x.degree = 8;
  x.sigma_desc = theta == GgTheta::None ? "" : gg_theta_tag(theta);
  x.family = "gg:n=" + std::to_string(n) + ",theta=" + gg_theta_tag(theta);
  x.rows.resize(x.n);
  x.labels.reserve(x.n);
  for (std::uint32_t i = 0; i < x.n; ++i) x.labels.push_back(group->label(group->at(i)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::uint32_t xi = static_cast<std::uint32_t>(a) * n + b;
      for (int k = 0; k < 8; ++k) {
        auto [u, v] = gg_phi_apply(k, a, b, n);
        auto [s, t] = gg_theta_apply(theta, u, v, n);
        x.add_edge(xi, static_cast<std::uint32_t>(s) * n + t, 1);
      }
    }
  x.sort_rows();
  x.check_row_sums();
  x.undirected = x.matrix_symmetric();
  return x;
}

/// The three Klein four-groups of twists used by the isospectrality checks.
/// klein1 = {id, negy, negx, neg}; klein2 = {id, swap, negswap, neg};
/// klein3 is the eps = -1 presentation {id, negswap, neg, swap}, the same
/// subgroup as klein2 with a different generator labeling.
inline std::vector<GgTheta> gg_klein_group(int which) {
  switch (which) {
    case 1: return {GgTheta::None, GgTheta::NegY, GgTheta::NegX, GgTheta::Neg};
    case 2: return {GgTheta::None, GgTheta::Swap, GgTheta::NegSwap, GgTheta::Neg};
    case 3: return {GgTheta::None, GgTheta::NegSwap, GgTheta::Neg, GgTheta::Swap};
    default: throw UsageError("klein group index must be 1, 2 or 3");
  }
}

}  // namespace cgl
