#pragma once

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "cgl/graph.hpp"

namespace cgl {

/// Lubotzky-Phillips-Sarnak data for a prime pair (p, q), both = 1 mod 4:
/// the (p+1)-element projective connection set over PSL2(F_q) or PGL2(F_q)
/// depending on whether p is a square mod q.
struct LpsData {
  int p = 0, q = 0;
  bool psl = false;
  GroupPtr group;
  ConnectionMultiset s;
  std::vector<std::array<int, 4>> quadruples;
};

inline LpsData lps_build(int p, int q) {
  if (!is_prime(p) || p % 4 != 1)
    throw MathError("lps needs prime p = 1 mod 4, got p=" + std::to_string(p));
  if (!is_prime(q) || q % 4 != 1)
    throw MathError("lps needs prime q = 1 mod 4, got q=" + std::to_string(q));
  if (p == q) throw MathError("lps needs distinct primes");
  LpsData d;
  d.p = p;
  d.q = q;
  d.psl = is_square_mod(p, q);
  d.group = build_group(d.psl ? Family::PSL2 : Family::PGL2, q);
  const FiniteField& f = d.group->field();
  std::uint32_t iq = sqrt_minus_one(static_cast<std::uint32_t>(q));

  // quadruples a0 odd, a1,a2,a3 even, a0^2+a1^2+a2^2+a3^2 = p (both signs)
  int amax = static_cast<int>(std::sqrt(static_cast<double>(p)));
  std::set<Elem> classes;
  auto odd = [](int v) { return ((v % 2) + 2) % 2 == 1; };
  for (int a0 = -amax; a0 <= amax; ++a0) {
    if (!odd(a0)) continue;
    for (int a1 = -amax; a1 <= amax; ++a1)
      for (int a2 = -amax; a2 <= amax; ++a2)
        for (int a3 = -amax; a3 <= amax; ++a3) {
          if (odd(a1) || odd(a2) || odd(a3)) continue;
          if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 != p) continue;
          auto fe = [&](long long v) { return f.from_int(v); };
          std::uint32_t i0 = fe(a0), i1 = fe(a1), i2 = fe(a2), i3 = fe(a3);
          Elem m{};
          m[0] = static_cast<int16_t>(f.add(i0, f.mul(iq, i1)));
          m[1] = static_cast<int16_t>(f.add(i2, f.mul(iq, i3)));
          m[2] = static_cast<int16_t>(f.add(f.neg(i2), f.mul(iq, i3)));
          m[3] = static_cast<int16_t>(f.sub(i0, f.mul(iq, i1)));
          std::uint32_t det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
          if (det != f.from_int(p))
            throw std::logic_error("lps matrix determinant is not p mod q");
          d.quadruples.push_back({a0, a1, a2, a3});
          classes.insert(d.group->canonicalize(m));
        }
  }
  if (static_cast<int>(classes.size()) != p + 1)
    throw MathError("lps connection set has " + std::to_string(classes.size()) +
                    " classes, expected p+1 = " + std::to_string(p + 1));
  d.s = ConnectionMultiset::from_elems(d.group,
                                       std::vector<Elem>(classes.begin(), classes.end()));
  if (!d.s.symmetric()) throw std::logic_error("lps connection set is not symmetric");
  return d;
}

/// The five order-two twists, by conjugation with (i = sqrt(-1) mod q):
///   1 [[0,1],[1,0]]  2 [[0,1],[-1,0]]  3 [[-1,0],[0,1]]
///   4 [[0,1],[i,0]]  5 [[0,-1],[i,0]]
inline GroupMap lps_sigma(const LpsData& d, int choice) {
  if (choice < 1 || choice > 5) throw UsageError("lps sigma choice must lie in 1..5");
  const FiniteField& f = d.group->field();
  std::uint32_t one = 1, neg1 = f.neg(1);
  std::uint32_t iq = sqrt_minus_one(static_cast<std::uint32_t>(d.q));
  Elem m{};
  switch (choice) {
    case 1: m[1] = static_cast<int16_t>(one); m[2] = static_cast<int16_t>(one); break;
    case 2: m[1] = static_cast<int16_t>(one); m[2] = static_cast<int16_t>(neg1); break;
    case 3: m[0] = static_cast<int16_t>(neg1); m[3] = static_cast<int16_t>(one); break;
    case 4: m[1] = static_cast<int16_t>(one); m[2] = static_cast<int16_t>(iq); break;
    case 5: m[1] = static_cast<int16_t>(neg1); m[2] = static_cast<int16_t>(iq); break;
  }
  GroupMap sigma = matrix_conjugation_automorphism(d.group, m);
  if (sigma.order > 2) throw MathError("lps sigma has order > 2");
  if (!d.s.mapped(sigma).same_multiset(d.s))
    throw MathError("lps sigma does not stabilize the connection set");
  sigma.desc = "lps-sigma-" + std::to_string(choice);
  return sigma;
}

/// Union of the two SL2(F_q) conjugacy classes of [[1,0],[1,1]] and
/// [[1,0],[-1,1]]; q = 3 mod 4.
inline ConnectionMultiset sl2_class_set(GroupPtr g) {
  if (g->family() != Family::SL2) throw UsageError("class set is defined over sl2");
  int q = g->n();
  if (q % 4 != 3) throw MathError("class set needs q = 3 mod 4, got q=" + std::to_string(q));
  const FiniteField& f = g->field();
  Elem up{}, um{};
  up[0] = 1; up[2] = 1; up[3] = 1;
  um[0] = 1; um[2] = static_cast<int16_t>(f.neg(1)); um[3] = 1;
  std::set<Elem> s;
  for (const Elem& e : conjugacy_class(g, up)) s.insert(e);
  for (const Elem& e : conjugacy_class(g, um)) s.insert(e);
  auto cm = ConnectionMultiset::from_elems(g, std::vector<Elem>(s.begin(), s.end()));
  if (!cm.symmetric()) throw std::logic_error("sl2 class set is not symmetric");
  return cm;
}

/// Twists for the class-set graphs: conjugation by [[0,1],[1,0]] (choice 1)
/// or [[0,1],[-1,0]] (choice 2).
inline GroupMap sl2_sigma(GroupPtr g, int choice) {
  if (g->family() != Family::SL2) throw UsageError("sl2 sigma is defined over sl2");
  if (choice != 1 && choice != 2) throw UsageError("sl2 sigma choice must be 1 or 2");
  const FiniteField& f = g->field();
  Elem m{};
  m[1] = 1;
  m[2] = static_cast<int16_t>(choice == 1 ? 1 : f.neg(1));
  GroupMap sigma = matrix_conjugation_automorphism(g, m);
  if (sigma.order > 2) throw MathError("sl2 sigma has order > 2");
  sigma.desc = "sl2-sigma-" + std::to_string(choice);
  return sigma;
}

enum class PaleyVariant { Graph, Sum, TwistedGraph, TwistedSum };

inline PaleyVariant paley_variant_from_tag(const std::string& s) {
  if (s == "graph") return PaleyVariant::Graph;
  if (s == "sum") return PaleyVariant::Sum;
  if (s == "twisted-graph") return PaleyVariant::TwistedGraph;
  if (s == "twisted-sum") return PaleyVariant::TwistedSum;
  throw UsageError("unknown paley variant '" + s + "'");
}

/// Paley graph machinery on the additive group of F_q, q = 1 mod 4, with the
/// nonzero squares as connection set; twisted variants use the Frobenius
/// square root x -> x^(p^(k/2)) and need q = p^(2k).
inline VariantGraph paley(int q, PaleyVariant variant,
                          std::optional<poly::Poly> modulus = {}) {
  std::uint64_t p;
  int k;
  if (!prime_power(static_cast<std::uint64_t>(q), p, k))
    throw UsageError("paley order must be a prime power, got " + std::to_string(q));
  if (q % 4 != 1) throw MathError("paley needs q = 1 mod 4, got q=" + std::to_string(q));
  auto g = Group::make(GroupSpec{Family::AdditiveField, q, std::move(modulus)});
  const FiniteField& f = g->field();
  std::vector<Elem> sq;
  for (std::uint32_t a = 1; a < f.q(); ++a)
    if (f.is_square(a)) {
      Elem e{};
      e[0] = static_cast<int16_t>(a);
      sq.push_back(e);
    }
  auto s = ConnectionMultiset::from_elems(g, sq);
  if (s.degree != (q - 1) / 2) throw std::logic_error("paley square count is off");
  VariantGraph x;
  switch (variant) {
    case PaleyVariant::Graph: x = build_variant(g, s, Variant::Cayley); break;
    case PaleyVariant::Sum: x = build_variant(g, s, Variant::CayleySum); break;
    case PaleyVariant::TwistedGraph: {
      GroupMap sigma = frobenius_automorphism(g);
      x = build_variant(g, s, Variant::TwistedCayley, &sigma);
      break;
    }
    case PaleyVariant::TwistedSum: {
      GroupMap sigma = frobenius_automorphism(g);
      x = build_variant(g, s, Variant::TwistedCayleySum, &sigma);
      break;
    }
  }
  std::string tag = variant == PaleyVariant::Graph          ? "graph"
                    : variant == PaleyVariant::Sum          ? "sum"
                    : variant == PaleyVariant::TwistedGraph ? "twisted-graph"
                                                            : "twisted-sum";
  x.family = "paley:q=" + std::to_string(q) + ",variant=" + tag;
  return x;
}

/// T_{k,n} = {(1,2), (3,4), ..., (2k-1,2k)}, H = <T> of order 2^k, and the
/// symmetric H-stable set S = T u orbit_H(c) u orbit_H(c^-1) for the n-cycle
/// c = (1,2,...,n).
struct PermutationApparatus {
  int k = 0, n = 0;
  GroupPtr group;
  std::vector<Elem> t;           // the k transpositions
  std::vector<Elem> h;           // all 2^k elements of H, enumeration order
  std::vector<GroupMap> sigmas;  // conjugation by each transposition
  ConnectionMultiset s;
};

inline PermutationApparatus perm_apparatus(int k, int n) {
  if (k < 1) throw UsageError("perm apparatus needs k >= 1");
  if (n < 2 * k) throw UsageError("perm apparatus needs n >= 2k");
  PermutationApparatus a;
  a.k = k;
  a.n = n;
  a.group = build_group(Family::Symmetric, n);
  GroupPtr g = a.group;
  for (int t = 0; t < k; ++t) {
    Elem e = g->id();
    e[2 * t] = static_cast<int16_t>(2 * t + 1);
    e[2 * t + 1] = static_cast<int16_t>(2 * t);
    a.t.push_back(e);
    a.sigmas.push_back(inner_automorphism(g, e));
  }
  // H = all subset products of the commuting transpositions
  std::set<std::uint32_t> hset;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Elem prod = g->id();
    for (int t = 0; t < k; ++t)
      if (mask & (1u << t)) prod = g->mul(prod, a.t[t]);
    hset.insert(g->index_of(prod));
  }
  if (hset.size() != (1u << k)) throw std::logic_error("H has wrong order");
  for (std::uint32_t i : hset) a.h.push_back(g->at(i));

  Elem c{};
  for (int i = 0; i < n; ++i) c[i] = static_cast<int16_t>((i + 1) % n);
  Elem ci = g->inv(c);
  std::set<Elem> s(a.t.begin(), a.t.end());
  for (const Elem& h : a.h) {
    s.insert(g->conj(h, c));
    s.insert(g->conj(h, ci));
  }
  a.s = ConnectionMultiset::from_elems(g, std::vector<Elem>(s.begin(), s.end()));
  if (a.s.degree > k + 2 * (1 << k)) throw std::logic_error("apparatus set exceeds size bound");
  if (!a.s.symmetric()) throw std::logic_error("apparatus set is not symmetric");
  return a;
}

}  // namespace cgl
