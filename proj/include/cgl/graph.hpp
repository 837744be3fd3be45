#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "cgl/connection.hpp"

namespace cgl {

enum class Variant { Cayley, CayleySum, TwistedCayley, TwistedCayleySum, Schreier };

inline const char* variant_tag(Variant v) {
  switch (v) {
    case Variant::Cayley: return "cayley";
    case Variant::CayleySum: return "sum";
    case Variant::TwistedCayley: return "twisted";
    case Variant::TwistedCayleySum: return "twistedsum";
    case Variant::Schreier: return "schreier";
  }
  return "?";
}

inline int variant_index(Variant v) {
  switch (v) {
    case Variant::Cayley: return 1;
    case Variant::CayleySum: return 2;
    case Variant::TwistedCayley: return 3;
    case Variant::TwistedCayleySum: return 4;
    default: throw UsageError("schreier graphs have no variant index");
  }
}

inline Variant variant_from_index(int i) {
  switch (i) {
    case 1: return Variant::Cayley;
    case 2: return Variant::CayleySum;
    case 3: return Variant::TwistedCayley;
    case 4: return Variant::TwistedCayleySum;
    default: throw UsageError("variant index must lie in 1..4");
  }
}

/// Default cap on dense eigensolves; CGL_MAX_DENSE_N overrides.
inline std::uint32_t max_dense_n() {
  if (const char* s = std::getenv("CGL_MAX_DENSE_N")) {
    long v = std::atol(s);
    if (v > 0) return static_cast<std::uint32_t>(v);
  }
  return 6000;
}

/// A finite directed multigraph on a group's element list (or a bare vertex
/// set for loaded graphs). Rows hold (column, multiplicity) sorted by column.
struct VariantGraph {
  Variant variant = Variant::Cayley;
  GroupPtr group;  // null for graphs loaded from disk
  std::string family;
  std::string sigma_desc;
  std::uint32_t n = 0;
  int degree = 0;
  bool undirected = false;
  std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> rows;
  std::vector<std::string> labels;

  std::int32_t at(std::uint32_t x, std::uint32_t y) const {
    for (auto& [c, m] : rows[x])
      if (c == y) return m;
    return 0;
  }

  std::int64_t trace() const {
    std::int64_t t = 0;
    for (std::uint32_t x = 0; x < n; ++x) t += at(x, x);
    return t;
  }

  bool matrix_symmetric() const {
    for (std::uint32_t x = 0; x < n; ++x)
      for (auto& [y, m] : rows[x])
        if (at(y, x) != m) return false;
    return true;
  }

  /// First (x, y) with A[x,y] != A[y,x], if any.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> asymmetry_witness() const {
    for (std::uint32_t x = 0; x < n; ++x)
      for (auto& [y, m] : rows[x])
        if (at(y, x) != m) return std::make_pair(x, y);
    return std::nullopt;
  }

  std::vector<double> dense() const {
    if (n > max_dense_n())
      throw MathError("graph with " + std::to_string(n) + " vertices exceeds dense cap " +
                      std::to_string(max_dense_n()));
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t x = 0; x < n; ++x)
      for (auto& [y, m] : rows[x]) a[static_cast<std::size_t>(x) * n + y] = m;
    return a;
  }

  void add_edge(std::uint32_t x, std::uint32_t y, std::int32_t m = 1) {
    for (auto& [c, mm] : rows[x])
      if (c == y) {
        mm += m;
        return;
      }
    rows[x].emplace_back(y, m);
  }

  void sort_rows() {
    for (auto& r : rows) std::sort(r.begin(), r.end());
  }

  void check_row_sums() const {
    for (std::uint32_t x = 0; x < n; ++x) {
      std::int64_t s = 0;
      for (auto& [c, m] : rows[x]) s += m;
      if (s != degree)
        throw std::logic_error("row " + std::to_string(x) + " sums to " + std::to_string(s) +
                               ", expected " + std::to_string(degree));
    }
  }
};

struct UndirectedVerdict {
  bool undirected = false;
  bool operational = false;                 // A == A^T
  std::optional<bool> closed_form;          // absent where no closed form is used
  std::string rule;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
};

/// Closed-form undirectedness tests per variant, cross-checked against the
/// operational matrix transpose test; a disagreement is an internal error.
///   Cayley           S = S^-1
///   CayleySum        operational only
///   TwistedCayley    S = sigma(S^-1)
///   TwistedCayleySum S = g sigma(S) g^-1 for every g
inline UndirectedVerdict check_undirected(const VariantGraph& x, const ConnectionMultiset& s,
                                          const GroupMap* sigma = nullptr) {
  UndirectedVerdict v;
  v.operational = x.matrix_symmetric();
  if (!v.operational) v.witness = x.asymmetry_witness();
  switch (x.variant) {
    case Variant::Cayley:
      v.rule = "S = S^-1";
      v.closed_form = s.same_multiset(s.inverted());
      break;
    case Variant::CayleySum:
      v.rule = "operational A = A^T";
      break;
    case Variant::TwistedCayley: {
      if (!sigma) throw UsageError("twisted undirectedness test needs sigma");
      v.rule = "S = sigma(S^-1)";
      v.closed_form = s.same_multiset(s.inverted().mapped(*sigma));
      break;
    }
    case Variant::TwistedCayleySum: {
      if (!sigma) throw UsageError("twisted undirectedness test needs sigma");
      v.rule = "S = g sigma(S) g^-1 for all g";
      ConnectionMultiset ss = s.mapped(*sigma);
      bool ok = true;
      GroupPtr g = s.group;
      for (std::uint32_t i = 0; i < g->order() && ok; ++i) {
        std::map<std::uint32_t, std::int32_t> acc;
        const Elem& h = g->at(i);
        Elem hi = g->inv(h);
        for (auto& [j, m] : ss.items) acc[g->index_of(g->mul(g->mul(h, g->at(j)), hi))] += m;
        ok = ConnectionMultiset::from_counts(g, acc).same_multiset(s);
      }
      v.closed_form = ok;
      break;
    }
    case Variant::Schreier:
      v.rule = "operational A = A^T";
      break;
  }
  if (v.closed_form && *v.closed_form != v.operational)
    throw std::logic_error("closed-form undirectedness disagrees with the matrix test (" +
                           v.rule + ")");
  v.undirected = v.operational;
  return v;
}

/// Adjacency rule per variant: edge x -> y for each s in S with
///   Cayley            y = x s
///   CayleySum         y = x^-1 s
///   TwistedCayley     y = sigma(x s)
///   TwistedCayleySum  y = sigma(x^-1 s)
inline VariantGraph build_variant(GroupPtr g, const ConnectionMultiset& s, Variant variant,
                                  const GroupMap* sigma = nullptr) {
  if (s.group.get() != g.get()) throw UsageError("connection set belongs to a different group");
  bool twisted = variant == Variant::TwistedCayley || variant == Variant::TwistedCayleySum;
  if (variant == Variant::Schreier) throw UsageError("schreier graphs use their own builder");
  if (twisted) {
    if (!sigma) throw UsageError("twisted variants need sigma");
    if (sigma->group.get() != g.get()) throw UsageError("sigma acts on a different group");
    if (sigma->kind != MapKind::Automorphism) throw MathError("sigma must be an automorphism");
    if (sigma->order > 2) throw MathError("sigma must have order <= 2");
  } else if (sigma && !sigma->is_identity()) {
    throw UsageError("sigma given for an untwisted variant");
  }

  VariantGraph x;
  x.variant = variant;
  x.group = g;
  x.n = static_cast<std::uint32_t>(g->order());
  x.degree = s.degree;
  x.sigma_desc = twisted ? sigma->desc : "";
  x.rows.resize(x.n);
  x.labels.reserve(x.n);
  for (std::uint32_t i = 0; i < x.n; ++i) x.labels.push_back(g->label(g->at(i)));

  for (std::uint32_t xi = 0; xi < x.n; ++xi) {
    const Elem& xe = g->at(xi);
    Elem base = (variant == Variant::CayleySum || variant == Variant::TwistedCayleySum)
                    ? g->inv(xe)
                    : xe;
    for (auto& [si, m] : s.items) {
      Elem y = g->mul(base, g->at(si));
      std::uint32_t yi = g->index_of(y);
      if (twisted) yi = sigma->apply_idx(yi);
      x.add_edge(xi, yi, m);
    }
  }
  x.sort_rows();
  x.check_row_sums();
  x.undirected = x.matrix_symmetric();
  x.family = std::string(variant_tag(variant)) + ":group=" + g->spec_string();
  return x;
}

/// Vertex permutation with m o m = id.
struct InvolutionMatrix {
  std::vector<std::uint32_t> perm;
  std::uint32_t fixed = 0;

  static InvolutionMatrix from_perm(const std::vector<std::uint32_t>& p) {
    InvolutionMatrix m;
    m.perm = p;
    for (std::uint32_t i = 0; i < p.size(); ++i) {
      if (p[i] >= p.size() || p[p[i]] != i)
        throw MathError("map is not an involution (witness index " + std::to_string(i) + ")");
      if (p[i] == i) ++m.fixed;
    }
    return m;
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(perm.size()); }
};

inline InvolutionMatrix involution_matrix(const GroupMap& m) {
  if (m.order > 2) throw MathError("map has order " + std::to_string(m.order) + ", not <= 2");
  return InvolutionMatrix::from_perm(m.table);
}

/// P * A for a vertex permutation given as x -> p(x): (PA)[x, y] = A[p(x), y]
/// (P sends basis vector e_g to e_{p(g)}, and p is an involution).
inline VariantGraph permuted_rows(const VariantGraph& a, const InvolutionMatrix& p) {
  VariantGraph r = a;
  for (std::uint32_t x = 0; x < a.n; ++x) r.rows[x] = a.rows[p.perm[x]];
  r.undirected = r.matrix_symmetric();
  return r;
}

}  // namespace cgl
