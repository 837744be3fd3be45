#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cgl/connection.hpp"
#include "cgl/graph.hpp"
#include "cgl/group_map.hpp"
#include "cgl/spectrum.hpp"

namespace cgl {

// ---------------------------------------------------------------------------
// permutation helpers (vertex permutations as index tables)

inline std::vector<std::uint32_t> identity_perm(std::uint32_t n) {
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline std::vector<std::uint32_t> compose_perm(const std::vector<std::uint32_t>& p,
                                               const std::vector<std::uint32_t>& q) {
  std::vector<std::uint32_t> r(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline bool perm_is_involution(const std::vector<std::uint32_t>& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (p[p[i]] != i) return false;
  return true;
}

inline bool perms_commute(const std::vector<std::uint32_t>& p,
                          const std::vector<std::uint32_t>& q) {
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (p[q[i]] != q[p[i]]) return false;
  return true;
}

inline std::uint32_t perm_fixed_count(const std::vector<std::uint32_t>& p) {
  std::uint32_t c = 0;
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (p[i] == i) ++c;
  return c;
}

/// A[p(x)][p(y)] == A[x][y] for all x, y — equivalent to PA = AP for an
/// involution P.  Checked exactly on the sparse rows.
inline bool perm_preserves_graph(const std::vector<std::uint32_t>& p, const VariantGraph& a) {
  for (std::uint32_t x = 0; x < a.n; ++x)
    for (const auto& [y, m] : a.rows[x])
      if (a.at(p[x], p[y]) != m) return false;
  return true;
}

/// Row-permuted dense matrix: (PA)[x][y] = A[p(x)][y].
inline std::vector<double> dense_permuted_rows(const std::vector<double>& a, std::uint32_t n,
                                               const std::vector<std::uint32_t>& p) {
  std::vector<double> out(a.size());
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      out[static_cast<std::size_t>(x) * n + y] = a[static_cast<std::size_t>(p[x]) * n + y];
  return out;
}

// ---------------------------------------------------------------------------
// exact +/- eigenbasis of a permutation involution

struct SignedBasis {
  std::vector<std::vector<double>> plus, minus;
};

/// Fixed points give + vectors; each 2-cycle {x, p(x)} gives one + and one -
/// vector.  Exactly orthonormal by construction.
inline SignedBasis involution_split_basis(const std::vector<std::uint32_t>& p) {
  std::uint32_t n = static_cast<std::uint32_t>(p.size());
  SignedBasis b;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (p[x] == x) {
      std::vector<double> v(n, 0.0);
      v[x] = 1.0;
      b.plus.push_back(std::move(v));
    } else if (p[x] > x) {
      std::vector<double> vp(n, 0.0), vm(n, 0.0);
      vp[x] = inv_sqrt2;
      vp[p[x]] = inv_sqrt2;
      vm[x] = inv_sqrt2;
      vm[p[x]] = -inv_sqrt2;
      b.plus.push_back(std::move(vp));
      b.minus.push_back(std::move(vm));
    }
  }
  return b;
}

inline std::vector<double> compressed_spectrum(const std::vector<double>& a, std::uint32_t n,
                                               const std::vector<std::vector<double>>& basis) {
  if (basis.empty()) return {};
  std::vector<double> m = compress_matrix(a, n, basis);
  return eigen_symmetric_values(std::move(m), static_cast<std::uint32_t>(basis.size()));
}

// ---------------------------------------------------------------------------
// pairing certificate: the cross-variant transport A_j = P.A_i and the signed
// spectral consequences it forces

struct PairingReport {
  int variant_i = 0, variant_j = 0;
  std::uint32_t n = 0, degree = 0;
  bool undirected_i = false, undirected_j = false;
  bool hypotheses_hold = false;
  bool exact_transport = false;  // A_j == P.A_i entrywise
  std::uint32_t fixed_points = 0;
  std::uint32_t dim_plus = 0, dim_minus = 0;
  bool dims_formula = false;  // dim_plus == (n + fixed)/2
  bool plus_match = false;    // E_j^+ == E_i^+
  bool minus_match = false;   // E_j^- == -E_i^-
  bool split_covers_i = false, split_covers_j = false;
  std::string pairing_map;
  std::string witness;
  std::vector<double> plus_i, minus_i, plus_j, minus_j;

  bool pass() const {
    return hypotheses_hold && exact_transport && dims_formula && plus_match && minus_match &&
           split_covers_i && split_covers_j;
  }
};

inline PairingReport pairing_certificate(const GroupPtr& g, const ConnectionMultiset& s,
                                         const GroupMap* sigma, int vi, int vj,
                                         double tol = kSpectralTol) {
  PairingReport r;
  r.variant_i = vi;
  r.variant_j = vj;
  VariantGraph ai = build_variant(g, s, variant_from_index(vi), vi >= 3 ? sigma : nullptr);
  VariantGraph aj = build_variant(g, s, variant_from_index(vj), vj >= 3 ? sigma : nullptr);
  r.n = ai.n;
  r.degree = static_cast<std::uint32_t>(ai.degree);
  UndirectedVerdict ui = check_undirected(ai, s, vi >= 3 ? sigma : nullptr);
  UndirectedVerdict uj = check_undirected(aj, s, vj >= 3 ? sigma : nullptr);
  r.undirected_i = ui.undirected;
  r.undirected_j = uj.undirected;
  // The inverse-closure hypothesis is only needed to relate the sum graph to
  // the twisted graph; every other pair transports without it.
  bool need_symmetric = (vi == 2 && vj == 3) || (vi == 3 && vj == 2);
  bool sym_ok = !need_symmetric || s.symmetric();
  r.hypotheses_hold = r.undirected_i && r.undirected_j && sym_ok;
  if (!r.hypotheses_hold) {
    std::ostringstream os;
    if (!r.undirected_i) os << "variant " << vi << " is directed; ";
    if (!r.undirected_j) os << "variant " << vj << " is directed; ";
    if (!sym_ok) os << "connection multiset is not inverse-closed";
    r.witness = os.str();
    return r;
  }
  GroupMap pmap = gij_map(g, vi, vj, sigma);
  r.pairing_map = pmap.desc;
  InvolutionMatrix P = involution_matrix(pmap);
  r.fixed_points = static_cast<std::uint32_t>(P.fixed);
  VariantGraph transported = permuted_rows(ai, P);
  r.exact_transport = true;
  for (std::uint32_t x = 0; x < r.n && r.exact_transport; ++x)
    if (transported.rows[x] != aj.rows[x]) {
      r.exact_transport = false;
      std::ostringstream os;
      os << "rows differ at vertex " << aj.labels[x];
      r.witness = os.str();
    }
  SignedBasis basis = involution_split_basis(P.perm);
  r.dim_plus = static_cast<std::uint32_t>(basis.plus.size());
  r.dim_minus = static_cast<std::uint32_t>(basis.minus.size());
  r.dims_formula = 2 * r.dim_plus == r.n + r.fixed_points &&
                   2 * r.dim_minus == r.n - r.fixed_points;
  std::vector<double> di = ai.dense(), dj = aj.dense();
  r.plus_i = compressed_spectrum(di, r.n, basis.plus);
  r.minus_i = compressed_spectrum(di, r.n, basis.minus);
  r.plus_j = compressed_spectrum(dj, r.n, basis.plus);
  r.minus_j = compressed_spectrum(dj, r.n, basis.minus);
  std::vector<double> neg_minus_i = r.minus_i;
  for (double& v : neg_minus_i) v = -v;
  r.plus_match = multiset_equal(r.plus_j, r.plus_i, tol);
  r.minus_match = multiset_equal(r.minus_j, neg_minus_i, tol);
  std::vector<double> join_i = r.plus_i, join_j = r.plus_j;
  join_i.insert(join_i.end(), r.minus_i.begin(), r.minus_i.end());
  join_j.insert(join_j.end(), r.minus_j.begin(), r.minus_j.end());
  r.split_covers_i = multiset_equal(join_i, eigen_symmetric_values(di, r.n), tol);
  r.split_covers_j = multiset_equal(join_j, eigen_symmetric_values(dj, r.n), tol);
  return r;
}

// ---------------------------------------------------------------------------
// joint signed splits for a commuting family of involutions

struct JointSplitInput {
  std::vector<std::vector<std::uint32_t>> perms;  // generators P_1..P_k
  std::vector<std::string> names;
};

inline JointSplitInput joint_input_from_maps(const std::vector<GroupMap>& maps) {
  JointSplitInput in;
  for (const GroupMap& m : maps) {
    InvolutionMatrix im = involution_matrix(m);
    in.perms.push_back(im.perm);
    in.names.push_back(m.desc);
  }
  return in;
}

/// Projector (1/2^k) prod_t (I + eps_t P_t); bit t of mask set means
/// eps_t = -1.  Built by k cheap row combinations.
inline std::vector<double> joint_projector(const JointSplitInput& in, std::uint32_t n,
                                           std::uint32_t mask) {
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1.0;
  for (std::size_t t = 0; t < in.perms.size(); ++t) {
    double sign = (mask >> t) & 1u ? -1.0 : 1.0;
    const std::vector<std::uint32_t>& p = in.perms[t];
    std::vector<double> next(m.size());
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        next[static_cast<std::size_t>(i) * n + j] =
            0.5 * (m[static_cast<std::size_t>(i) * n + j] +
                   sign * m[static_cast<std::size_t>(i) * n + p[j]]);
    m = std::move(next);
  }
  return m;
}

inline std::string mask_name(std::uint32_t mask, std::size_t k) {
  std::string s;
  for (std::size_t t = 0; t < k; ++t) s += (mask >> t) & 1u ? '-' : '+';
  return s;
}

/// Shared preconditions: generators are involutions, pairwise commute, and
/// commute with the adjacency operator.  All integer-exact.
inline void check_joint_preconditions(const JointSplitInput& in, const VariantGraph& a) {
  std::size_t k = in.perms.size();
  if (k == 0) throw UsageError("at least one involution is required");
  if (k > 6) throw UsageError("too many generators for a joint split (max 6)");
  for (std::size_t t = 0; t < k; ++t) {
    if (in.perms[t].size() != a.n)
      throw MathError("involution " + in.names[t] + " acts on the wrong vertex count");
    if (!perm_is_involution(in.perms[t]))
      throw MathError("map " + in.names[t] + " is not an involution on the vertices");
    if (!perm_preserves_graph(in.perms[t], a))
      throw MathError("map " + in.names[t] + " does not commute with the adjacency operator");
    for (std::size_t u = t + 1; u < k; ++u)
      if (!perms_commute(in.perms[t], in.perms[u]))
        throw MathError("maps " + in.names[t] + " and " + in.names[u] + " do not commute");
  }
}

/// Burnside count for one character: (1/2^k) sum_masks eps(mask) Fix(P_mask).
/// Throws when the result is not a nonnegative integer.
inline std::vector<std::uint32_t> burnside_dimensions(const JointSplitInput& in,
                                                      std::uint32_t n) {
  std::size_t k = in.perms.size();
  std::uint32_t nchar = 1u << k;
  std::vector<std::int64_t> fix(nchar);
  for (std::uint32_t sub = 0; sub < nchar; ++sub) {
    std::vector<std::uint32_t> p = identity_perm(n);
    for (std::size_t t = 0; t < k; ++t)
      if ((sub >> t) & 1u) p = compose_perm(in.perms[t], p);
    fix[sub] = perm_fixed_count(p);
  }
  std::vector<std::uint32_t> dims(nchar);
  for (std::uint32_t mask = 0; mask < nchar; ++mask) {
    std::int64_t sum = 0;
    for (std::uint32_t sub = 0; sub < nchar; ++sub) {
      int sign = __builtin_popcount(mask & sub) & 1 ? -1 : 1;
      sum += sign * fix[sub];
    }
    if (sum < 0 || sum % nchar != 0)
      throw MathError("character dimension " + mask_name(mask, k) + " is not integral");
    dims[mask] = static_cast<std::uint32_t>(sum / nchar);
  }
  return dims;
}

struct JointSplitReport {
  std::uint32_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint32_t> dims;           // pivoted basis ranks, per mask
  std::vector<std::uint32_t> burnside;       // counting formula, per mask
  bool dims_agree = false;                   // the two columns match exactly
  bool dims_sum_ok = false;                  // sum of dims == n
  bool projectors_ok = false;                // idempotent + pairwise orthogonal
  double projector_defect = 0.0;
  bool hypothesis = false;  // spec(P_I A) == spec(A) for every nonempty I
  std::string hypothesis_witness;
  // Per sign vector, the component spectrum split by sign of the value.
  std::vector<std::vector<double>> eps_plus, eps_minus, eps_zero;
  std::vector<bool> eps_symmetric;  // per nontrivial mask: E_{eps,+} == -E_{eps,-}
  bool all_symmetric = false;
  std::uint32_t symmetric_size = 0;  // n - dim of the all-plus space
  std::uint32_t max_symmetric = 0;   // largest sign-symmetric sub-multiset of spec(A)
  bool subset_ok = false;

  bool pass() const {
    return dims_agree && dims_sum_ok && projectors_ok &&
           (!hypothesis || (all_symmetric && subset_ok));
  }
};

/// Split one component spectrum into strictly positive / strictly negative /
/// near-zero parts at the matching tolerance.
inline void split_by_sign(const std::vector<double>& values, double tol,
                          std::vector<double>& plus, std::vector<double>& minus,
                          std::vector<double>& zero) {
  for (double v : values) {
    if (v > tol)
      plus.push_back(v);
    else if (v < -tol)
      minus.push_back(v);
    else
      zero.push_back(v);
  }
}

inline JointSplitReport joint_signed_split(const VariantGraph& a, const JointSplitInput& in,
                                           double tol = kSpectralTol) {
  check_joint_preconditions(in, a);
  JointSplitReport r;
  r.n = a.n;
  r.k = in.perms.size();
  std::uint32_t nchar = 1u << r.k;
  std::vector<double> da = a.dense();
  std::vector<double> base_spec = eigen_symmetric_values(da, a.n);

  std::vector<std::vector<double>> projectors(nchar);
  for (std::uint32_t mask = 0; mask < nchar; ++mask)
    projectors[mask] = joint_projector(in, a.n, mask);

  double defect = 0.0;
  auto max_abs = [&](const std::vector<double>& m) {
    double v = 0.0;
    for (double x : m) v = std::max(v, std::fabs(x));
    return v;
  };
  auto mat_mul = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out(static_cast<std::size_t>(a.n) * a.n, 0.0);
    for (std::uint32_t i = 0; i < a.n; ++i)
      for (std::uint32_t kk = 0; kk < a.n; ++kk) {
        double v = x[static_cast<std::size_t>(i) * a.n + kk];
        if (v == 0.0) continue;
        const double* row = &y[static_cast<std::size_t>(kk) * a.n];
        double* orow = &out[static_cast<std::size_t>(i) * a.n];
        for (std::uint32_t j = 0; j < a.n; ++j) orow[j] += v * row[j];
      }
    return out;
  };
  for (std::uint32_t mask = 0; mask < nchar; ++mask) {
    std::vector<double> sq = mat_mul(projectors[mask], projectors[mask]);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] -= projectors[mask][i];
    defect = std::max(defect, max_abs(sq));
  }
  for (std::uint32_t m1 = 0; m1 < nchar; ++m1)
    for (std::uint32_t m2 = m1 + 1; m2 < nchar; ++m2)
      defect = std::max(defect, max_abs(mat_mul(projectors[m1], projectors[m2])));
  r.projector_defect = defect;
  r.projectors_ok = defect <= 1e-10;

  r.burnside = burnside_dimensions(in, a.n);
  std::uint32_t dim_sum = 0;
  r.dims.resize(nchar);
  r.eps_plus.resize(nchar);
  r.eps_minus.resize(nchar);
  r.eps_zero.resize(nchar);
  for (std::uint32_t mask = 0; mask < nchar; ++mask) {
    auto basis = projector_column_basis(projectors[mask], a.n);
    r.dims[mask] = static_cast<std::uint32_t>(basis.size());
    dim_sum += r.dims[mask];
    std::vector<double> spec = compressed_spectrum(da, a.n, basis);
    split_by_sign(spec, tol, r.eps_plus[mask], r.eps_minus[mask], r.eps_zero[mask]);
  }
  r.dims_agree = r.dims == r.burnside;
  r.dims_sum_ok = dim_sum == a.n;

  r.hypothesis = true;
  for (std::uint32_t sub = 1; sub < nchar && r.hypothesis; ++sub) {
    std::vector<std::uint32_t> p = identity_perm(a.n);
    for (std::size_t t = 0; t < r.k; ++t)
      if ((sub >> t) & 1u) p = compose_perm(in.perms[t], p);
    std::vector<double> twisted = dense_permuted_rows(da, a.n, p);
    std::vector<double> spec = eigen_symmetric_values(std::move(twisted), a.n);
    if (!multiset_equal(spec, base_spec, tol)) {
      r.hypothesis = false;
      r.hypothesis_witness = "twist " + mask_name(sub, r.k) + " changes the spectrum";
    }
  }

  r.eps_symmetric.assign(nchar, true);
  r.all_symmetric = true;
  if (r.hypothesis) {
    for (std::uint32_t mask = 1; mask < nchar; ++mask) {
      std::vector<double> neg = r.eps_minus[mask];
      for (double& v : neg) v = -v;
      bool sym = multiset_equal(r.eps_plus[mask], neg, tol);
      r.eps_symmetric[mask] = sym;
      if (!sym) r.all_symmetric = false;
    }
    r.symmetric_size = a.n - r.dims[0];
    r.max_symmetric = max_symmetric_subset(base_spec, tol);
    r.subset_ok = r.max_symmetric >= r.symmetric_size;
  }
  return r;
}

// ---------------------------------------------------------------------------
// isospectrality of a graph family across the characters of a 2-torsion group

struct HIsospectralEntry {
  std::uint32_t h_mask = 0, char_mask = 0;
  int sign = 1;  // chi(h)
  bool match = false;
};

struct HIsospectralReport {
  std::uint32_t n = 0;
  std::size_t k = 0;
  std::vector<HIsospectralEntry> entries;
  bool pass = false;
};

/// family[h] for h over all 2^k products of the generators, family[0] being
/// the base graph.  For each h and each character chi, E(A_h)_chi must equal
/// chi(h) E(A_e)_chi as a multiset.
inline HIsospectralReport h_isospectral_check(const std::vector<VariantGraph>& family,
                                              const JointSplitInput& in,
                                              double tol = kSpectralTol) {
  std::size_t k = in.perms.size();
  if (k > 6) throw UsageError("too many generators for a joint split (max 6)");
  std::uint32_t nchar = 1u << k;
  if (family.size() != nchar)
    throw UsageError("family must have one graph per group element (" +
                     std::to_string(nchar) + " expected, " + std::to_string(family.size()) +
                     " given)");
  std::uint32_t n = family[0].n;
  for (const VariantGraph& g : family)
    if (g.n != n) throw UsageError("family members live on different vertex sets");
  for (std::size_t t = 0; t < k; ++t) {
    if (in.perms[t].size() != n)
      throw MathError("map " + in.names[t] + " acts on the wrong vertex count");
    if (!perm_is_involution(in.perms[t]))
      throw MathError("map " + in.names[t] + " is not an involution on the vertices");
    for (std::size_t u = t + 1; u < k; ++u)
      if (!perms_commute(in.perms[t], in.perms[u]))
        throw MathError("maps " + in.names[t] + " and " + in.names[u] + " do not commute");
    for (std::uint32_t h = 0; h < nchar; ++h)
      if (!perm_preserves_graph(in.perms[t], family[h]))
        throw MathError("map " + in.names[t] +
                        " does not commute with the adjacency operator of member " +
                        mask_name(h, k));
  }
  HIsospectralReport r;
  r.n = n;
  r.k = k;
  std::vector<std::vector<std::vector<double>>> bases(nchar);
  std::vector<std::vector<double>> base_spec(nchar);
  std::vector<double> de = family[0].dense();
  for (std::uint32_t mask = 0; mask < nchar; ++mask) {
    bases[mask] = projector_column_basis(joint_projector(in, n, mask), n);
    base_spec[mask] = compressed_spectrum(de, n, bases[mask]);
  }
  r.pass = true;
  for (std::uint32_t h = 0; h < nchar; ++h) {
    std::vector<double> dh = family[h].dense();
    for (std::uint32_t mask = 0; mask < nchar; ++mask) {
      HIsospectralEntry e;
      e.h_mask = h;
      e.char_mask = mask;
      e.sign = __builtin_popcount(h & mask) & 1 ? -1 : 1;
      std::vector<double> got = compressed_spectrum(dh, n, bases[mask]);
      std::vector<double> want = base_spec[mask];
      if (e.sign < 0)
        for (double& v : want) v = -v;
      e.match = multiset_equal(got, want, tol);
      if (!e.match) r.pass = false;
      r.entries.push_back(e);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// symmetric-subset dichotomy

struct DichotomyReport {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> dims;
  std::uint32_t required = 0;
  std::uint32_t max_symmetric = 0;
  bool horn_symmetric = false;   // spectrum carries the required symmetric part
  bool horn_twist = false;       // some signed twist is non-isospectral
  std::string twist_witness;
  bool pass = false;
};

inline DichotomyReport dichotomy_check(const VariantGraph& a, const JointSplitInput& in,
                                       double tol = kSpectralTol) {
  check_joint_preconditions(in, a);
  DichotomyReport r;
  r.n = a.n;
  std::size_t k = in.perms.size();
  std::uint32_t nchar = 1u << k;
  r.dims = burnside_dimensions(in, a.n);
  if (a.n <= 4096) {
    auto basis = projector_column_basis(joint_projector(in, a.n, 0), a.n);
    if (static_cast<std::uint32_t>(basis.size()) != r.dims[0])
      throw MathError("all-plus dimension disagrees with the counting formula");
  }
  r.required = a.n - r.dims[0];
  std::vector<double> da = a.dense();
  std::vector<double> base_spec = eigen_symmetric_values(da, a.n);
  r.max_symmetric = max_symmetric_subset(base_spec, tol);
  r.horn_symmetric = r.max_symmetric >= r.required;
  for (std::uint32_t sub = 1; sub < nchar && !r.horn_twist; ++sub) {
    std::vector<std::uint32_t> p = identity_perm(a.n);
    for (std::size_t t = 0; t < k; ++t)
      if ((sub >> t) & 1u) p = compose_perm(in.perms[t], p);
    std::vector<double> spec = eigen_symmetric_values(dense_permuted_rows(da, a.n, p), a.n);
    if (!multiset_equal(spec, base_spec, tol)) {
      r.horn_twist = true;
      r.twist_witness = mask_name(sub, k);
    }
  }
  r.pass = r.horn_symmetric || r.horn_twist;
  return r;
}

// ---------------------------------------------------------------------------
// isotypic dimensions and the uniformity count

struct IsotypicReport {
  std::uint32_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint32_t> dims;  // per character mask
  bool rank_checked = false;
  bool rank_agrees = true;
};

inline IsotypicReport isotypic_dimensions(const JointSplitInput& in, std::uint32_t n) {
  std::size_t k = in.perms.size();
  if (k == 0) throw UsageError("at least one involution is required");
  for (std::size_t t = 0; t < k; ++t) {
    if (in.perms[t].size() != n)
      throw MathError("map " + in.names[t] + " acts on the wrong point count");
    if (!perm_is_involution(in.perms[t]))
      throw MathError("map " + in.names[t] + " is not an involution");
    for (std::size_t u = t + 1; u < k; ++u)
      if (!perms_commute(in.perms[t], in.perms[u]))
        throw MathError("maps " + in.names[t] + " and " + in.names[u] + " do not commute");
  }
  IsotypicReport r;
  r.n = n;
  r.k = k;
  r.dims = burnside_dimensions(in, n);
  if (n <= 200) {
    r.rank_checked = true;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      auto basis = projector_column_basis(joint_projector(in, n, mask), n);
      if (static_cast<std::uint32_t>(basis.size()) != r.dims[mask]) r.rank_agrees = false;
    }
    if (!r.rank_agrees) throw MathError("projector ranks disagree with character counts");
  }
  return r;
}

struct UniformityReport {
  std::uint32_t n = 0;
  std::uint32_t moved_by_all = 0;  // points fixed by no nontrivial element
  double ratio = 0.0;
};

/// Conjugation x -> t x t by the transposition of two 0-based letters,
/// composed directly on the images so the transposition itself need not lie
/// in the group (it does not for alternating groups).
inline GroupMap transposition_conjugation(GroupPtr g, int p, int q) {
  if (g->family() != Family::Symmetric && g->family() != Family::Alternating)
    throw UsageError("transposition conjugation needs a permutation group");
  int n = g->n();
  if (p < 0 || q < 0 || p >= n || q >= n || p == q)
    throw UsageError("transposition letters must be distinct and in range");
  auto swap_pq = [p, q](int i) { return i == p ? q : i == q ? p : i; };
  GroupMap m = make_group_map(
      g,
      [n, swap_pq](const Elem& x) {
        Elem y{};
        for (int i = 0; i < n; ++i) y[i] = static_cast<int16_t>(swap_pq(x[swap_pq(i)]));
        return y;
      },
      MapKind::Automorphism,
      "conj(" + std::to_string(p + 1) + "," + std::to_string(q + 1) + ")");
  return m;
}

/// Counts points moved by every nontrivial element of the generated group.
inline UniformityReport uniformity_count(const JointSplitInput& in, std::uint32_t n) {
  std::size_t k = in.perms.size();
  if (k == 0) throw UsageError("at least one involution is required");
  std::uint32_t nchar = 1u << k;
  std::vector<bool> fixed_somewhere(n, false);
  for (std::uint32_t sub = 1; sub < nchar; ++sub) {
    std::vector<std::uint32_t> p = identity_perm(n);
    for (std::size_t t = 0; t < k; ++t)
      if ((sub >> t) & 1u) p = compose_perm(in.perms[t], p);
    bool trivial = true;
    for (std::uint32_t i = 0; i < n; ++i)
      if (p[i] != i) {
        trivial = false;
        break;
      }
    if (trivial) continue;  // generators need not be independent
    for (std::uint32_t i = 0; i < n; ++i)
      if (p[i] == i) fixed_somewhere[i] = true;
  }
  UniformityReport r;
  r.n = n;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!fixed_somewhere[i]) ++r.moved_by_all;
  r.ratio = n ? static_cast<double>(r.moved_by_all) / n : 0.0;
  return r;
}

struct UniformityRow {
  int degree = 0;                  // permutation letters n
  std::uint32_t group_order = 0;   // N = |G_n|
  std::uint32_t m = 0;             // elements with pairwise-distinct conjugates
  double m_ratio = 0.0;            // m / N
  std::vector<std::uint32_t> dims;
  std::vector<double> dim_ratios;  // dims / N, per character
};

struct UniformityTable {
  int k = 0;
  bool alternating = false;
  std::vector<UniformityRow> rows;
  bool ratio_monotone = false;  // m/N strictly increases with the degree
};

/// Sweep of the conjugation action of k disjoint transpositions over a range
/// of symmetric or alternating groups, with the per-character dimensions.
inline UniformityTable uniformity_table(Family fam, int k, int n_lo, int n_hi) {
  if (fam != Family::Symmetric && fam != Family::Alternating)
    throw UsageError("the uniformity table covers symmetric and alternating groups");
  if (k < 1 || k > 4) throw UsageError("transposition count must be between 1 and 4");
  if (n_lo < 2 * k) throw UsageError("the smallest degree must be at least 2k");
  if (n_hi < n_lo || n_hi > 9) throw UsageError("degrees must stay within [2k, 9]");
  UniformityTable t;
  t.k = k;
  t.alternating = fam == Family::Alternating;
  for (int n = n_lo; n <= n_hi; ++n) {
    GroupPtr g = build_group(fam, n);
    std::vector<GroupMap> maps;
    for (int i = 0; i < k; ++i) maps.push_back(transposition_conjugation(g, 2 * i, 2 * i + 1));
    JointSplitInput in = joint_input_from_maps(maps);
    std::uint32_t order = static_cast<std::uint32_t>(g->order());
    UniformityRow row;
    row.degree = n;
    row.group_order = order;
    row.m = uniformity_count(in, order).moved_by_all;
    row.m_ratio = static_cast<double>(row.m) / order;
    row.dims = burnside_dimensions(in, order);
    for (std::uint32_t d : row.dims)
      row.dim_ratios.push_back(static_cast<double>(d) / order);
    t.rows.push_back(std::move(row));
  }
  t.ratio_monotone = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (t.rows[i].m_ratio <= t.rows[i - 1].m_ratio) t.ratio_monotone = false;
  return t;
}

}  // namespace cgl
