#pragma once

#include <map>
#include <string>
#include <vector>

#include "cgl/group_map.hpp"

namespace cgl {

/// Multiset of connection elements over a fixed group, stored as sorted
/// (element index, multiplicity) pairs. The degree of every graph built from
/// it equals the total multiplicity.
struct ConnectionMultiset {
  GroupPtr group;
  std::vector<std::pair<std::uint32_t, std::int32_t>> items;
  int degree = 0;

  static ConnectionMultiset from_elems(GroupPtr g, const std::vector<Elem>& elems) {
    std::map<std::uint32_t, std::int32_t> acc;
    for (const Elem& e : elems) acc[g->index_of(e)] += 1;
    return from_counts(g, acc);
  }

  static ConnectionMultiset from_counts(GroupPtr g,
                                        const std::map<std::uint32_t, std::int32_t>& acc) {
    ConnectionMultiset s;
    s.group = g;
    for (auto& [idx, m] : acc) {
      if (m <= 0) throw UsageError("connection multiplicities must be positive");
      s.items.emplace_back(idx, m);
      s.degree += m;
    }
    if (s.degree == 0) throw UsageError("connection multiset is empty");
    return s;
  }

  std::int32_t mult_of(std::uint32_t idx) const {
    for (auto& [i, m] : items)
      if (i == idx) return m;
    return 0;
  }

  /// mult(s) == mult(s^-1) for every s.
  bool symmetric() const {
    for (auto& [i, m] : items)
      if (mult_of(group->index_of(group->inv(group->at(i)))) != m) return false;
    return true;
  }

  /// Multiset image under a group self-map.
  ConnectionMultiset mapped(const GroupMap& f) const {
    std::map<std::uint32_t, std::int32_t> acc;
    for (auto& [i, m] : items) acc[f.apply_idx(i)] += m;
    return from_counts(group, acc);
  }

  ConnectionMultiset inverted() const {
    std::map<std::uint32_t, std::int32_t> acc;
    for (auto& [i, m] : items) acc[group->index_of(group->inv(group->at(i)))] += m;
    return from_counts(group, acc);
  }

  bool same_multiset(const ConnectionMultiset& o) const { return items == o.items; }

  std::vector<std::string> labels() const {
    std::vector<std::string> v;
    for (auto& [i, m] : items)
      for (int t = 0; t < m; ++t) v.push_back(group->label(group->at(i)));
    return v;
  }
};

enum class ClosureMode { Inverse, SigmaInverse, Orbit };

/// Set-level closures (multiplicities collapse to 1):
///   Inverse       S u S^-1
///   SigmaInverse  S u sigma(S^-1)
///   Orbit         union of images under all products of the given maps
inline ConnectionMultiset closure_set(const ConnectionMultiset& s, ClosureMode mode,
                                      const std::vector<GroupMap>& maps = {}) {
  GroupPtr g = s.group;
  std::map<std::uint32_t, std::int32_t> acc;
  auto put = [&](std::uint32_t i) { acc[i] = 1; };
  switch (mode) {
    case ClosureMode::Inverse:
      for (auto& [i, m] : s.items) {
        put(i);
        put(g->index_of(g->inv(g->at(i))));
      }
      break;
    case ClosureMode::SigmaInverse: {
      if (maps.size() != 1) throw UsageError("sigma-inverse closure needs exactly one map");
      for (auto& [i, m] : s.items) {
        put(i);
        put(maps[0].apply_idx(g->index_of(g->inv(g->at(i)))));
      }
      break;
    }
    case ClosureMode::Orbit: {
      if (maps.empty()) throw UsageError("orbit closure needs at least one map");
      for (std::size_t a = 0; a < maps.size(); ++a)
        for (std::size_t b = a + 1; b < maps.size(); ++b)
          for (std::uint32_t i = 0; i < g->order(); ++i)
            if (maps[a].apply_idx(maps[b].apply_idx(i)) !=
                maps[b].apply_idx(maps[a].apply_idx(i)))
              throw MathError("orbit closure needs commuting maps; " + maps[a].desc + " and " +
                              maps[b].desc + " disagree at " + g->label(g->at(i)));
      std::vector<std::uint32_t> work;
      for (auto& [i, m] : s.items) {
        put(i);
        work.push_back(i);
      }
      while (!work.empty()) {
        std::uint32_t i = work.back();
        work.pop_back();
        for (const GroupMap& f : maps) {
          std::uint32_t j = f.apply_idx(i);
          if (!acc.count(j)) {
            acc[j] = 1;
            work.push_back(j);
          }
        }
      }
      break;
    }
  }
  return ConnectionMultiset::from_counts(g, acc);
}

inline ConnectionMultiset class_connection(GroupPtr g, const Elem& h) {
  return ConnectionMultiset::from_elems(g, conjugacy_class(g, h));
}

}  // namespace cgl
