#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "cgl/connection.hpp"
#include "cgl/graph.hpp"
#include "cgl/group_map.hpp"
#include "cgl/spectrum.hpp"

namespace cgl {

/// Longest directed BFS distance from start, or nullopt when some vertex is
/// unreachable.
inline std::optional<std::uint32_t> bfs_eccentricity(const VariantGraph& g,
                                                     std::uint32_t start) {
  std::vector<std::uint32_t> dist(g.n, UINT32_MAX);
  std::queue<std::uint32_t> q;
  dist[start] = 0;
  q.push(start);
  std::uint32_t ecc = 0;
  while (!q.empty()) {
    std::uint32_t x = q.front();
    q.pop();
    for (const auto& [y, m] : g.rows[x])
      if (dist[y] == UINT32_MAX) {
        dist[y] = dist[x] + 1;
        ecc = std::max(ecc, dist[y]);
        q.push(y);
      }
  }
  for (std::uint32_t v : dist)
    if (v == UINT32_MAX) return std::nullopt;
  return ecc;
}

/// Exact diameter by BFS from every vertex; nullopt when the graph is not
/// strongly connected.  Directed input is fine.
inline std::optional<std::uint32_t> bfs_diameter(const VariantGraph& g) {
  std::uint32_t diam = 0;
  for (std::uint32_t x = 0; x < g.n; ++x) {
    std::optional<std::uint32_t> ecc = bfs_eccentricity(g, x);
    if (!ecc) return std::nullopt;
    diam = std::max(diam, *ecc);
  }
  return diam;
}

/// Component count and bipartite flag for an undirected graph.
inline ConnectivityInfo connectivity_bipartite(const VariantGraph& g) {
  if (auto w = g.asymmetry_witness())
    throw MathError("graph is directed: entry (" + std::to_string(w->first) + "," +
                    std::to_string(w->second) + ") has no matching reverse");
  return connectivity(g);
}

struct DiameterRelationReport {
  int variant_i = 0, variant_j = 0;
  std::uint32_t diam_i = 0, diam_j = 0;
  bool forward = false;   // diam_i <= 2 diam_j
  bool backward = false;  // diam_j <= 2 diam_i
  bool pass = false;
};

inline DiameterRelationReport diameter_relation_check(const VariantGraph& gi,
                                                      const VariantGraph& gj, int vi, int vj) {
  if (gi.asymmetry_witness() || gj.asymmetry_witness())
    throw MathError("the diameter relation needs undirected graphs");
  std::optional<std::uint32_t> di = bfs_diameter(gi), dj = bfs_diameter(gj);
  if (!di || !dj) throw MathError("the diameter relation needs connected graphs");
  DiameterRelationReport r;
  r.variant_i = vi;
  r.variant_j = vj;
  r.diam_i = *di;
  r.diam_j = *dj;
  r.forward = r.diam_i <= 2 * r.diam_j;
  r.backward = r.diam_j <= 2 * r.diam_i;
  r.pass = r.forward && r.backward;
  return r;
}

/// Lower bound (|S|/4e) |G|^{1/|S|} - |S|/2 for sum and twisted variants over
/// an abelian group.
inline double abelian_diameter_lower_bound(std::uint32_t group_order, std::uint32_t set_size) {
  double s = static_cast<double>(set_size);
  double base = std::pow(static_cast<double>(group_order), 1.0 / s);
  return s / (4.0 * std::exp(1.0)) * base - s / 2.0;
}

struct AbelianDiameterReport {
  std::uint32_t diameter = 0;
  double bound = 0.0;
  bool pass = false;
};

inline AbelianDiameterReport abelian_diameter_check(const VariantGraph& g,
                                                    const GroupPtr& grp,
                                                    std::uint32_t set_size) {
  if (g.variant == Variant::Cayley || g.variant == Variant::Schreier)
    throw UsageError("the abelian diameter bound covers only sum and twisted variants");
  if (!grp->is_abelian()) throw UsageError("the diameter bound needs an abelian group");
  std::optional<std::uint32_t> diam = bfs_diameter(g);
  if (!diam) throw MathError("the diameter bound needs a connected graph");
  AbelianDiameterReport r;
  r.diameter = *diam;
  r.bound = abelian_diameter_lower_bound(grp->order(), set_size);
  r.pass = static_cast<double>(r.diameter) >= r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// loops and closed walks

/// Loop multiplicity at x follows from the edge rule: the connection element
/// producing a loop is e, x^2, x^{-1} sigma(x), or x sigma(x) by variant.
inline std::uint64_t loop_count_algebraic(Variant v, const GroupPtr& g,
                                          const ConnectionMultiset& s, const GroupMap* sigma) {
  std::uint64_t total = 0;
  for (std::uint32_t xi = 0; xi < g->order(); ++xi) {
    const Elem& x = g->at(xi);
    Elem need;
    switch (v) {
      case Variant::Cayley:
        need = g->id();
        break;
      case Variant::CayleySum:
        need = g->mul(x, x);
        break;
      case Variant::TwistedCayley:
        need = g->mul(g->inv(x), sigma->apply(x));
        break;
      case Variant::TwistedCayleySum:
        need = g->mul(x, sigma->apply(x));
        break;
      default:
        throw UsageError("loop rule applies to the four group variants");
    }
    total += s.mult_of(g->index_of(need));
  }
  return total;
}

inline std::uint64_t loop_count_trace(const VariantGraph& g) {
  std::uint64_t total = 0;
  for (std::uint32_t x = 0; x < g.n; ++x) total += static_cast<std::uint64_t>(g.at(x, x));
  return total;
}

/// Closed walks of the given length starting at one vertex, by weighted DFS.
inline std::uint64_t closed_walks_at(const VariantGraph& g, std::uint32_t start, int length) {
  struct Frame {
    std::uint32_t vertex;
    std::uint64_t weight;
    int depth;
  };
  std::uint64_t total = 0;
  std::vector<Frame> stack{{start, 1, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == length) {
      if (f.vertex == start) total += f.weight;
      continue;
    }
    for (const auto& [y, m] : g.rows[f.vertex])
      stack.push_back({y, f.weight * static_cast<std::uint64_t>(m), f.depth + 1});
  }
  return total;
}

inline std::vector<std::uint64_t> closed_walks_per_vertex(const VariantGraph& g, int length) {
  std::vector<std::uint64_t> out(g.n);
  for (std::uint32_t x = 0; x < g.n; ++x) out[x] = closed_walks_at(g, x, length);
  return out;
}

inline std::uint32_t loop_vertex_count(const VariantGraph& g) {
  std::uint32_t count = 0;
  for (std::uint32_t x = 0; x < g.n; ++x)
    if (g.at(x, x) >= 1) ++count;
  return count;
}

/// Vertices carrying a closed walk of the given length.  Short lengths only:
/// the per-vertex walk enumeration grows as degree^length.
inline std::uint32_t closed_walk_vertex_count(const VariantGraph& g, int length) {
  if (length < 1 || length > 4) throw UsageError("walk length must be between 1 and 4");
  std::uint32_t count = 0;
  for (std::uint32_t x = 0; x < g.n; ++x)
    if (closed_walks_at(g, x, length) > 0) ++count;
  return count;
}

/// All products of m elements drawn from the given set, as a set.
inline std::vector<Elem> set_power(const GroupPtr& g, const std::vector<Elem>& elems, int m) {
  std::set<Elem> cur{g->id()};
  for (int i = 0; i < m; ++i) {
    std::set<Elem> next;
    for (const Elem& a : cur)
      for (const Elem& b : elems) next.insert(g->mul(a, b));
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

struct WalkCountReport {
  std::uint32_t n = 0;
  int length = 0;
  std::uint32_t vertices_with_walk = 0;   // from the graph, by DFS
  std::uint32_t criterion_count = 0;      // x with x^{-1} sigma(x) in F^length
  bool criterion_matches = false;
  double lower_bound = 0.0;               // (n-2)!/4 for alternating instances
  bool bound_holds = false;
  double envelope = 0.0;                  // analytic upper envelope
  double envelope_scaled = 0.0;           // envelope / (n-1)!
};

/// Twisted-graph closed-walk census: a vertex x carries a closed walk of odd
/// length L exactly when x^{-1} sigma(x) is a product of L connection
/// elements.  Verified against the DFS count, then measured against the
/// factorial lower bound and the analytic envelope.
inline WalkCountReport twisted_walk_census(const VariantGraph& graph, const GroupPtr& g,
                                           const ConnectionMultiset& s, const GroupMap& sigma,
                                           int length, int degree_n, int r) {
  if (graph.variant != Variant::TwistedCayley)
    throw UsageError("the walk census targets the twisted graph variant");
  WalkCountReport rep;
  rep.n = graph.n;
  rep.length = length;
  std::vector<Elem> f_elems;
  for (const auto& [idx, mult] : s.items) f_elems.push_back(g->at(idx));
  std::vector<Elem> fpow = set_power(g, f_elems, length);
  std::set<Elem> fset(fpow.begin(), fpow.end());
  for (std::uint32_t xi = 0; xi < g->order(); ++xi) {
    const Elem& x = g->at(xi);
    if (fset.count(g->mul(g->inv(x), sigma.apply(x)))) ++rep.criterion_count;
  }
  for (std::uint32_t x = 0; x < graph.n; ++x)
    if (closed_walks_at(graph, x, length) > 0) ++rep.vertices_with_walk;
  rep.criterion_matches = rep.vertices_with_walk == rep.criterion_count;
  double fact = 1.0;
  for (int i = 2; i <= degree_n - 2; ++i) fact *= i;
  rep.lower_bound = fact / 4.0;
  rep.bound_holds = rep.vertices_with_walk >= rep.lower_bound;
  double nf = 1.0;
  for (int i = 2; i <= degree_n - 2 * r; ++i) nf *= i;
  double tf = 1.0;
  for (int i = 2; i <= 2 * r; ++i) tf *= i;
  double grow = std::pow(1.0 + 2.0 * r * std::sqrt(static_cast<double>(degree_n - 2 * r)),
                         2.0 * r);
  rep.envelope = 0.5 * static_cast<double>(fpow.size()) * nf * tf * grow;
  double nm1 = 1.0;
  for (int i = 2; i <= degree_n - 1; ++i) nm1 *= i;
  rep.envelope_scaled = rep.envelope / nm1;
  return rep;
}

// ---------------------------------------------------------------------------
// Cheeger constants

struct CheegerReport {
  double h_edge = 0.0;
  double h_vertex = 0.0;
  std::vector<std::uint32_t> edge_cut;    // witnessing subsets, as vertex indices
  std::vector<std::uint32_t> vertex_cut;
  double lambda2_over_d = 0.0;
  bool buser_lower = false;  // (1 - lambda2/d)/2 <= h_edge/d
  bool buser_upper = false;  // h_edge/d <= sqrt(2 (1 - lambda2/d))
};

/// Exhaustive edge and vertex expansion over all subsets of at most half the
/// vertices.  Loops never cross a cut and are ignored.
inline CheegerReport cheeger_exact(const VariantGraph& g, const Spectrum& spec) {
  if (g.n > 20) throw UsageError("exhaustive expansion constants are limited to 20 vertices");
  if (g.n < 2) throw UsageError("expansion needs at least two vertices");
  CheegerReport r;
  r.h_edge = 1e300;
  r.h_vertex = 1e300;
  std::uint32_t best_edge_mask = 0, best_vertex_mask = 0;
  std::uint32_t full = (1u << g.n) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint32_t size = static_cast<std::uint32_t>(__builtin_popcount(mask));
    if (2 * size > g.n) continue;
    std::uint64_t cut = 0;
    std::uint32_t boundary = 0;
    std::uint32_t seen = 0;
    for (std::uint32_t x = 0; x < g.n; ++x) {
      if (!((mask >> x) & 1u)) continue;
      for (const auto& [y, m] : g.rows[x]) {
        if ((mask >> y) & 1u) continue;
        cut += m;
        if (!((seen >> y) & 1u)) {
          seen |= 1u << y;
          ++boundary;
        }
      }
    }
    double he = static_cast<double>(cut) / size;
    double hv = static_cast<double>(boundary) / size;
    if (he < r.h_edge) {
      r.h_edge = he;
      best_edge_mask = mask;
    }
    if (hv < r.h_vertex) {
      r.h_vertex = hv;
      best_vertex_mask = mask;
    }
  }
  for (std::uint32_t x = 0; x < g.n; ++x) {
    if ((best_edge_mask >> x) & 1u) r.edge_cut.push_back(x);
    if ((best_vertex_mask >> x) & 1u) r.vertex_cut.push_back(x);
  }
  double d = static_cast<double>(g.degree);
  r.lambda2_over_d = spec.second_largest() / d;
  double gap = 1.0 - r.lambda2_over_d;
  r.buser_lower = gap / 2.0 <= r.h_edge / d + 1e-9;
  r.buser_upper = r.h_edge / d <= std::sqrt(std::max(0.0, 2.0 * gap)) + 1e-9;
  return r;
}

struct SpectralIntervalReport {
  double lower = 0.0, upper = 0.0;  // bounds on lambda/d for nontrivial lambda
  double min_ratio = 0.0, max_ratio = 0.0;
  bool pass = false;
  std::string witness;
};

/// Nontrivial normalized spectrum against the expansion-driven interval
/// (-1 + eps^4 / (2^{9+eta} d^8), 1 - eps^2 / (2 d^2)], eps the vertex
/// expansion constant, eta 0 for plain variants and 3 for twisted ones.
inline SpectralIntervalReport spectral_interval_check(const VariantGraph& g,
                                                      const Spectrum& spec,
                                                      const CheegerReport& cheeger) {
  int eta;
  switch (g.variant) {
    case Variant::Cayley:
    case Variant::CayleySum:
      eta = 0;
      break;
    case Variant::TwistedCayley:
    case Variant::TwistedCayleySum:
      eta = 3;
      break;
    default:
      throw UsageError("the spectral interval covers only the four group variants");
  }
  SpectralIntervalReport r;
  double d = static_cast<double>(g.degree);
  double eps = cheeger.h_vertex;
  r.lower = -1.0 + std::pow(eps, 4.0) / (std::pow(2.0, 9.0 + eta) * std::pow(d, 8.0));
  r.upper = 1.0 - eps * eps / (2.0 * d * d);
  r.pass = true;
  bool first = true;
  for (double v : spec.nontrivial()) {
    double q = v / d;
    if (first || q < r.min_ratio) r.min_ratio = q;
    if (first || q > r.max_ratio) r.max_ratio = q;
    first = false;
    if (!(q > r.lower) || !(q <= r.upper + 1e-12)) {
      r.pass = false;
      r.witness = "normalized eigenvalue " + std::to_string(q) + " escapes the interval";
    }
  }
  return r;
}

/// Two graphs identical up to the given vertex relabeling.
inline bool graphs_isomorphic_under(const std::vector<std::uint32_t>& p, const VariantGraph& a,
                                    const VariantGraph& b) {
  if (a.n != b.n || p.size() != a.n) return false;
  for (std::uint32_t x = 0; x < a.n; ++x) {
    if (a.rows[x].size() != b.rows[p[x]].size()) return false;
    for (const auto& [y, m] : a.rows[x])
      if (b.at(p[x], p[y]) != m) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// non-isomorphism fingerprints

constexpr std::uint32_t kNoDiameter = UINT32_MAX;  // disconnected marker

struct Fingerprint {
  std::uint64_t spectrum_digest = 0;  // eigenvalues rounded to 1e-6, hashed
  std::uint64_t loop_count = 0;       // trace of A
  std::uint32_t loop_vertices = 0;
  std::vector<std::uint64_t> walk3_histogram;  // per-vertex closed-3-walk counts, sorted
  std::uint32_t diameter = kNoDiameter;
  bool bipartite = false;

  bool operator==(const Fingerprint& o) const {
    return spectrum_digest == o.spectrum_digest && loop_count == o.loop_count &&
           loop_vertices == o.loop_vertices && walk3_histogram == o.walk3_histogram &&
           diameter == o.diameter && bipartite == o.bipartite;
  }
  bool operator!=(const Fingerprint& o) const { return !(*this == o); }
};

/// Isomorphism-invariant digest: equal fingerprints are necessary (not
/// sufficient) for isomorphism, so a mismatch certifies non-isomorphism.
inline Fingerprint fingerprint(const VariantGraph& g) {
  if (auto w = g.asymmetry_witness())
    throw MathError("fingerprints are defined for undirected graphs only");
  Fingerprint f;
  Spectrum s = compute_spectrum(g);
  std::string blob;
  for (double v : s.values) blob += std::to_string(std::llround(v * 1e6)) + ";";
  f.spectrum_digest = fnv64(blob);
  f.loop_count = loop_count_trace(g);
  f.loop_vertices = loop_vertex_count(g);
  f.walk3_histogram = closed_walks_per_vertex(g, 3);
  std::sort(f.walk3_histogram.begin(), f.walk3_histogram.end());
  f.diameter = bfs_diameter(g).value_or(kNoDiameter);
  f.bipartite = s.bipartite;
  return f;
}

// ---------------------------------------------------------------------------
// the invariance subgroup of a twisted graph, and conjugation isomorphisms

struct GsSigmaReport {
  std::vector<std::uint32_t> subgroup;  // element indices, enumeration order
  std::uint32_t fixed_subgroup_order = 0;  // order of the sigma-fixed subgroup
  bool contains_fixed = false;             // subgroup always contains it
  bool equals_fixed = false;
  std::uint32_t ss_inv_size = 0;         // |S S^{-1}|
  std::uint32_t min_class_size = 0;      // smallest conjugacy class of size > 1
  bool size_hypothesis = false;          // ss_inv_size < min_class_size
};

/// The elements h whose left translation x -> hx is an automorphism of the
/// twisted graph, found by direct edge-preservation testing.  Reports the
/// comparison with the sigma-fixed subgroup and the class-size condition that
/// forces equality.
inline GsSigmaReport compute_gs_sigma(const GroupPtr& g, const ConnectionMultiset& s,
                                      const GroupMap& sigma) {
  if (g->order() > 5040) throw UsageError("subgroup search is limited to 5040 elements");
  VariantGraph graph = build_variant(g, s, Variant::TwistedCayley, &sigma);
  GsSigmaReport r;
  std::uint32_t n = g->order();
  for (std::uint32_t hi = 0; hi < n; ++hi) {
    const Elem& h = g->at(hi);
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t xi = 0; xi < n; ++xi) p[xi] = g->index_of(g->mul(h, g->at(xi)));
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) {
      if (graph.rows[x].size() != graph.rows[p[x]].size()) ok = false;
      for (const auto& [y, m] : graph.rows[x])
        if (graph.at(p[x], p[y]) != m) {
          ok = false;
          break;
        }
    }
    if (ok) r.subgroup.push_back(hi);
  }
  r.contains_fixed = true;
  std::set<std::uint32_t> members(r.subgroup.begin(), r.subgroup.end());
  for (std::uint32_t xi = 0; xi < n; ++xi)
    if (sigma.apply(g->at(xi)) == g->at(xi)) {
      ++r.fixed_subgroup_order;
      if (!members.count(xi)) r.contains_fixed = false;
    }
  r.equals_fixed = r.contains_fixed && r.fixed_subgroup_order == r.subgroup.size();
  std::set<Elem> ss_inv;
  for (const auto& [ai, am] : s.items)
    for (const auto& [bi, bm] : s.items) ss_inv.insert(g->mul(g->at(ai), g->inv(g->at(bi))));
  r.ss_inv_size = static_cast<std::uint32_t>(ss_inv.size());
  std::vector<bool> placed(n, false);
  r.min_class_size = n + 1;
  for (std::uint32_t xi = 0; xi < n; ++xi) {
    if (placed[xi]) continue;
    std::vector<Elem> cls = conjugacy_class(g, g->at(xi));
    for (const Elem& e : cls) placed[g->index_of(e)] = true;
    if (cls.size() > 1)
      r.min_class_size = std::min(r.min_class_size, static_cast<std::uint32_t>(cls.size()));
  }
  if (r.min_class_size == n + 1) r.min_class_size = 0;  // abelian: no such class
  r.size_hypothesis = r.min_class_size > 0 && r.ss_inv_size < r.min_class_size;
  return r;
}

struct ConjugationIsomorphismReport {
  bool set_stable = false;      // g S g^{-1} == S as multisets
  bool isomorphism = false;     // edges map to edges bijectively
  std::vector<std::uint32_t> perm;  // u -> g u g^{-1} as vertex indices
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;  // first broken edge
};

/// Checks that conjugation by the given element carries graph a onto graph b
/// edge-for-edge.  Both graphs must live on the same group enumeration.
inline ConjugationIsomorphismReport conjugation_isomorphism(const GroupPtr& g,
                                                            const ConnectionMultiset& s,
                                                            const VariantGraph& a,
                                                            const VariantGraph& b,
                                                            const Elem& conj) {
  if (a.n != g->order() || b.n != g->order())
    throw UsageError("graphs do not match the group enumeration");
  ConjugationIsomorphismReport r;
  GroupMap inner = inner_automorphism(g, conj);
  r.set_stable = s.same_multiset(s.mapped(inner));
  std::uint32_t n = g->order();
  r.perm.resize(n);
  for (std::uint32_t xi = 0; xi < n; ++xi) r.perm[xi] = inner.apply_idx(xi);
  r.isomorphism = true;
  for (std::uint32_t x = 0; x < n && r.isomorphism; ++x) {
    if (a.rows[x].size() != b.rows[r.perm[x]].size()) {
      r.isomorphism = false;
      r.witness = {x, x};
    }
    for (const auto& [y, m] : a.rows[x])
      if (b.at(r.perm[x], r.perm[y]) != m) {
        r.isomorphism = false;
        r.witness = {x, y};
        break;
      }
  }
  return r;
}

}  // namespace cgl
