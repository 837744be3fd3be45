#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cgl/group.hpp"

namespace cgl {

enum class MapKind { Automorphism, Inversion, Composite };

inline constexpr int kMapOrderCap = 16;

/// A total self-map of a group, stored as an index table over the group's
/// enumeration. Automorphism kinds have the homomorphism property verified
/// at construction (exhaustively for |G| <= 500, on 1000 seeded random
/// pairs otherwise).
struct GroupMap {
  GroupPtr group;
  std::vector<std::uint32_t> table;
  MapKind kind = MapKind::Composite;
  int order = 1;
  std::string desc;

  std::uint32_t apply_idx(std::uint32_t i) const { return table[i]; }
  Elem apply(const Elem& e) const { return group->at(table[group->index_of(e)]); }
  bool is_identity() const { return order == 1; }

  std::uint32_t fixed_points() const {
    std::uint32_t c = 0;
    for (std::uint32_t i = 0; i < table.size(); ++i)
      if (table[i] == i) ++c;
    return c;
  }
};

namespace detail {

inline int map_order(const std::vector<std::uint32_t>& t) {
  std::vector<std::uint32_t> cur(t.size());
  for (std::uint32_t i = 0; i < t.size(); ++i) cur[i] = i;
  for (int m = 1; m <= kMapOrderCap; ++m) {
    bool ident = true;
    for (std::uint32_t i = 0; i < t.size(); ++i) {
      cur[i] = t[cur[i]];
      if (cur[i] != i) ident = false;
    }
    if (ident) return m;
  }
  throw MathError("map order exceeds cap " + std::to_string(kMapOrderCap));
}

inline void check_bijective(const std::vector<std::uint32_t>& t) {
  std::vector<bool> seen(t.size(), false);
  for (std::uint32_t v : t) {
    if (v >= t.size() || seen[v]) throw MathError("map is not a bijection of the group");
    seen[v] = true;
  }
}

inline void check_homomorphism(const Group& g, const std::vector<std::uint32_t>& t) {
  std::size_t n = g.order();
  auto ok = [&](std::uint32_t i, std::uint32_t j) {
    Elem lhs = g.at(t[g.index_of(g.mul(g.at(i), g.at(j)))]);
    Elem rhs = g.mul(g.at(t[i]), g.at(t[j]));
    return lhs == rhs;
  };
  if (n <= 500) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (!ok(i, j))
          throw MathError("map fails the homomorphism property at (" + g.label(g.at(i)) +
                          ", " + g.label(g.at(j)) + ")");
  } else {
    auto rng = seeded_rng(12345);
    std::uniform_int_distribution<std::uint32_t> dist(0, static_cast<std::uint32_t>(n - 1));
    for (int s = 0; s < 1000; ++s) {
      std::uint32_t i = dist(rng), j = dist(rng);
      if (!ok(i, j))
        throw MathError("map fails the homomorphism property at (" + g.label(g.at(i)) + ", " +
                        g.label(g.at(j)) + ")");
    }
  }
}

}  // namespace detail

inline GroupMap make_group_map(GroupPtr g, const std::function<Elem(const Elem&)>& fn,
                               MapKind kind, const std::string& desc) {
  GroupMap m;
  m.group = g;
  m.kind = kind;
  m.desc = desc;
  m.table.resize(g->order());
  for (std::uint32_t i = 0; i < g->order(); ++i) {
    Elem img = fn(g->at(i));
    if (!g->contains(img))
      throw MathError("map image " + g->label(img) + " leaves the group (" + desc + ")");
    m.table[i] = g->index_of(img);
  }
  detail::check_bijective(m.table);
  if (kind == MapKind::Automorphism) detail::check_homomorphism(*g, m.table);
  m.order = detail::map_order(m.table);
  return m;
}

inline GroupMap identity_map(GroupPtr g) {
  return make_group_map(g, [](const Elem& e) { return e; }, MapKind::Automorphism, "id");
}

/// x -> h x h^-1.
inline GroupMap inner_automorphism(GroupPtr g, const Elem& h) {
  g->index_of(h);  // membership check
  Elem hi = g->inv(h);
  return make_group_map(
      g, [g, h, hi](const Elem& x) { return g->mul(g->mul(h, x), hi); }, MapKind::Automorphism,
      "conj:" + g->label(h));
}

/// x -> x^-1 as a set map; an automorphism exactly on abelian groups.
inline GroupMap inversion_map(GroupPtr g) {
  return make_group_map(
      g, [g](const Elem& x) { return g->inv(x); },
      g->is_abelian() ? MapKind::Automorphism : MapKind::Inversion, "inv");
}

/// x -> x^(p^(k/2)) on the additive group of F_(p^k), k even.
inline GroupMap frobenius_automorphism(GroupPtr g) {
  if (g->family() != Family::AdditiveField)
    throw UsageError("frobenius twist needs an additive field group");
  const FiniteField& f = g->field();
  if (f.k() % 2 != 0)
    throw UsageError("frobenius square root needs even field degree, got k=" +
                    std::to_string(f.k()));
  return make_group_map(
      g,
      [&f](const Elem& x) {
        Elem r{};
        r[0] = static_cast<int16_t>(f.frobenius_half(static_cast<std::uint32_t>(x[0])));
        return r;
      },
      MapKind::Automorphism, "frobenius");
}

/// x -> M x M^-1 by an ambient invertible matrix over the group's field.
inline GroupMap matrix_conjugation_automorphism(GroupPtr g, const Elem& m) {
  if (!g->is_matrix()) throw UsageError("matrix conjugation needs a matrix group");
  const FiniteField& f = g->field();
  std::uint32_t dt = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
  if (dt == 0) throw UsageError("conjugating matrix is singular");
  // inverse of m as adjugate / det
  Elem mi{};
  std::uint32_t di = f.inv(dt);
  mi[0] = static_cast<int16_t>(f.mul(m[3], di));
  mi[1] = static_cast<int16_t>(f.mul(f.neg(m[1]), di));
  mi[2] = static_cast<int16_t>(f.mul(f.neg(m[2]), di));
  mi[3] = static_cast<int16_t>(f.mul(m[0], di));
  auto mat_mul = [&f](const Elem& a, const Elem& b) {
    Elem r{};
    r[0] = static_cast<int16_t>(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])));
    r[1] = static_cast<int16_t>(f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])));
    r[2] = static_cast<int16_t>(f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])));
    r[3] = static_cast<int16_t>(f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])));
    return r;
  };
  std::string desc = "conjmat:[[" + f.label(m[0]) + "," + f.label(m[1]) + "],[" + f.label(m[2]) +
                     "," + f.label(m[3]) + "]]";
  return make_group_map(
      g,
      [g, m, mi, mat_mul](const Elem& x) {
        Elem r = mat_mul(mat_mul(m, x), mi);
        return g->projective() ? g->canonicalize(r) : r;
      },
      MapKind::Automorphism, desc);
}

/// The pairing involution g -> g_ij between graph variants i, j in 1..4,
/// with sigma the twist (required whenever a twisted variant is involved):
///   i = j            : g
///   {1,2} or {3,4}   : g^-1
///   {1,3}            : sigma(g)
///   {1,4} or {2,3}   : sigma(g)^-1
///   {2,4}            : sigma(g)
inline GroupMap gij_map(GroupPtr g, int i, int j, const GroupMap* sigma = nullptr) {
  if (i < 1 || i > 4 || j < 1 || j > 4) throw UsageError("variant indices must lie in 1..4");
  auto need_sigma = [&]() -> const GroupMap& {
    if (!sigma) throw UsageError("pairing between these variants needs sigma");
    if (sigma->order > 2) throw MathError("sigma must have order <= 2");
    return *sigma;
  };
  if (i == j) return identity_map(g);
  int a = std::min(i, j), b = std::max(i, j);
  std::string name = "g" + std::to_string(i) + std::to_string(j);
  if ((a == 1 && b == 2) || (a == 3 && b == 4)) {
    return make_group_map(
        g, [g](const Elem& x) { return g->inv(x); }, MapKind::Composite, name + ":inv");
  }
  const GroupMap& s = need_sigma();
  if (a == 1 && b == 3) {
    return make_group_map(
        g, [&s](const Elem& x) { return s.apply(x); }, MapKind::Composite, name + ":sigma");
  }
  if ((a == 1 && b == 4) || (a == 2 && b == 3)) {
    return make_group_map(
        g, [g, &s](const Elem& x) { return g->inv(s.apply(x)); }, MapKind::Composite,
        name + ":sigma-inv");
  }
  // {2,4}
  return make_group_map(
      g, [&s](const Elem& x) { return s.apply(x); }, MapKind::Composite, name + ":sigma");
}

inline std::uint32_t count_fixed_points(const GroupMap& m) { return m.fixed_points(); }

/// Conjugacy class of h, sorted by enumeration index.
inline std::vector<Elem> conjugacy_class(GroupPtr g, const Elem& h) {
  g->index_of(h);
  std::vector<bool> in_class(g->order(), false);
  for (std::uint32_t i = 0; i < g->order(); ++i)
    in_class[g->index_of(g->conj(g->at(i), h))] = true;
  std::vector<Elem> cls;
  for (std::uint32_t i = 0; i < g->order(); ++i)
    if (in_class[i]) cls.push_back(g->at(i));
  return cls;
}

}  // namespace cgl
