#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "cgl/eigen.hpp"
#include "cgl/graph.hpp"

namespace cgl {

/// Tolerance for eigenvalue comparisons throughout: two values are the same
/// spectral point when they differ by at most this.
constexpr double kSpectralTol = 1e-6;

struct ConnectivityInfo {
  bool connected = false;
  bool bipartite = false;
  bool has_loop = false;
  std::uint32_t components = 0;
};

/// BFS two-coloring over the undirected support of the graph.  A loop kills
/// bipartiteness immediately; otherwise any odd cycle does.
inline ConnectivityInfo connectivity(const VariantGraph& g) {
  ConnectivityInfo info;
  info.bipartite = true;
  std::vector<int> color(g.n, -1);
  for (std::uint32_t x = 0; x < g.n; ++x)
    if (g.at(x, x) != 0) info.has_loop = true;
  if (info.has_loop) info.bipartite = false;
  for (std::uint32_t start = 0; start < g.n; ++start) {
    if (color[start] != -1) continue;
    ++info.components;
    color[start] = 0;
    std::queue<std::uint32_t> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      std::uint32_t x = bfs.front();
      bfs.pop();
      for (const auto& [y, m] : g.rows[x]) {
        if (y == x) continue;
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          bfs.push(y);
        } else if (color[y] == color[x]) {
          info.bipartite = false;
        }
      }
    }
  }
  info.connected = info.components == 1;
  return info;
}

struct Spectrum {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  bool connected = false;
  bool bipartite = false;
  std::vector<double> values;  // descending

  /// Everything except the trivial part: one copy of the degree is dropped,
  /// and one copy of -degree as well when the graph is connected bipartite.
  std::vector<double> nontrivial() const {
    std::vector<double> out = values;
    if (!out.empty()) out.erase(out.begin());
    if (connected && bipartite && !out.empty()) out.pop_back();
    return out;
  }

  double second_largest() const {
    return values.size() > 1 ? values[1] : values.empty() ? 0.0 : values[0];
  }

  double max_abs_nontrivial() const {
    double best = 0.0;
    for (double v : nontrivial()) best = std::max(best, std::fabs(v));
    return best;
  }
};

inline Spectrum compute_spectrum(const VariantGraph& g) {
  if (auto w = g.asymmetry_witness())
    throw MathError("adjacency is not symmetric: entry (" + std::to_string(w->first) + "," +
                    std::to_string(w->second) + ") has no matching reverse");
  Spectrum s;
  s.n = g.n;
  s.degree = static_cast<std::uint32_t>(g.degree);
  ConnectivityInfo info = connectivity(g);
  s.connected = info.connected;
  s.bipartite = info.bipartite;
  s.values = eigen_symmetric_values(g.dense(), g.n);
  return s;
}

struct MultisetMismatch {
  std::size_t index;
  double left, right;
};

/// Compare two real multisets within a tolerance after sorting.
inline std::optional<MultisetMismatch> multiset_mismatch(std::vector<double> a,
                                                         std::vector<double> b,
                                                         double tol = kSpectralTol) {
  if (a.size() != b.size())
    return MultisetMismatch{std::min(a.size(), b.size()), static_cast<double>(a.size()),
                            static_cast<double>(b.size())};
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return MultisetMismatch{i, a[i], b[i]};
  return std::nullopt;
}

inline bool multiset_equal(const std::vector<double>& a, const std::vector<double>& b,
                           double tol = kSpectralTol) {
  return !multiset_mismatch(a, b, tol).has_value();
}

struct EigenCluster {
  double value;
  std::uint32_t multiplicity;
};

/// Group a sorted-descending list into clusters separated by gaps > tol.
inline std::vector<EigenCluster> cluster_values(const std::vector<double>& values,
                                                double tol = kSpectralTol) {
  std::vector<EigenCluster> out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() && std::fabs(values[j - 1] - values[j]) <= tol) {
      sum += values[j];
      ++j;
    }
    out.push_back({sum / static_cast<double>(j - i), static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  return out;
}

struct SymmetricPair {
  double positive, negative;
  std::uint32_t count;  // eigenvalues contributed from each side
};

struct SymmetricSubsetReport {
  std::uint32_t size = 0;
  std::uint32_t zeros = 0;
  std::vector<SymmetricPair> pairs;
};

/// Largest sign-symmetric sub-multiset: 2 sum_{lambda > tol} min(mult(lambda),
/// mult(-lambda)) plus the count of values within tol of zero.  Multiplicities
/// come from tol-clustering; positive and negative clusters are matched by
/// magnitude.
inline SymmetricSubsetReport max_symmetric_subset_report(const std::vector<double>& values,
                                                         double tol = kSpectralTol) {
  SymmetricSubsetReport rep;
  std::vector<double> pos, neg;
  for (double v : values) {
    if (std::fabs(v) <= tol)
      ++rep.zeros;
    else if (v > 0)
      pos.push_back(v);
    else
      neg.push_back(-v);
  }
  std::sort(pos.begin(), pos.end(), std::greater<double>());
  std::sort(neg.begin(), neg.end(), std::greater<double>());
  std::vector<EigenCluster> cp = cluster_values(pos, tol);
  std::vector<EigenCluster> cn = cluster_values(neg, tol);
  rep.size = rep.zeros;
  std::size_t i = 0, j = 0;
  while (i < cp.size() && j < cn.size()) {
    if (std::fabs(cp[i].value - cn[j].value) <= tol) {
      std::uint32_t m = std::min(cp[i].multiplicity, cn[j].multiplicity);
      rep.pairs.push_back({cp[i].value, -cn[j].value, m});
      rep.size += 2 * m;
      ++i;
      ++j;
    } else if (cp[i].value > cn[j].value) {
      ++i;
    } else {
      ++j;
    }
  }
  return rep;
}

inline std::uint32_t max_symmetric_subset(const std::vector<double>& values,
                                          double tol = kSpectralTol) {
  return max_symmetric_subset_report(values, tol).size;
}

/// Whether the whole nontrivial spectrum is symmetric about zero.
inline bool spectrum_symmetric(const std::vector<double>& values, double tol = kSpectralTol) {
  std::vector<double> neg(values);
  for (double& v : neg) v = -v;
  return multiset_equal(values, neg, tol);
}

struct RamanujanReport {
  std::uint32_t degree = 0;
  double bound = 0.0;
  double max_abs_nontrivial = 0.0;
  bool ramanujan = false;
};

/// One-sided slack absorbs eigensolver roundoff when a value sits exactly on
/// the bound.
inline RamanujanReport ramanujan_check(const Spectrum& s) {
  RamanujanReport r;
  r.degree = s.degree;
  r.bound = 2.0 * std::sqrt(static_cast<double>(s.degree) - 1.0) + 1e-6;
  r.max_abs_nontrivial = s.max_abs_nontrivial();
  r.ramanujan = r.max_abs_nontrivial <= r.bound;
  return r;
}

struct RamanujanCertificate {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  bool bipartite = false;        // BFS verdict, cross-checked spectrally
  std::uint32_t trivial_removed = 0;
  double lambda_star = 0.0;      // max nontrivial |lambda|
  double bound = 0.0;            // 2 sqrt(d-1), slack added at comparison
  double margin = 0.0;           // bound - lambda_star (negative on failure)
  bool pass = false;
};

inline RamanujanCertificate certify_ramanujan(const VariantGraph& g,
                                              double tol = kSpectralTol) {
  Spectrum s = compute_spectrum(g);  // rejects directed input
  if (!s.connected) throw MathError("graph is disconnected");
  RamanujanCertificate c;
  c.n = s.n;
  c.degree = s.degree;
  c.bipartite = s.bipartite;
  double d = static_cast<double>(s.degree);
  bool neg_d_present = false;
  for (double v : s.values)
    if (std::fabs(v + d) <= tol) neg_d_present = true;
  if (c.bipartite != neg_d_present)
    throw MathError("bipartiteness disagrees with -d membership in the spectrum");
  c.trivial_removed = c.bipartite ? 2 : 1;
  c.lambda_star = s.max_abs_nontrivial();
  c.bound = 2.0 * std::sqrt(d - 1.0);
  c.margin = c.bound - c.lambda_star;
  c.pass = c.lambda_star <= c.bound + tol;
  return c;
}

struct SpectralGapReport {
  double lambda2 = 0.0;      // second largest eigenvalue
  double lambda_star = 0.0;  // largest nontrivial |lambda|
  double one_sided = 0.0;    // min(1, 1 - lambda2/d)
  double two_sided = 0.0;    // 1 - lambda_star/d
  double ratio_second = 0.0; // lambda2/d unclipped (can be negative)
};

inline SpectralGapReport spectral_gap(const Spectrum& s) {
  if (!s.connected) throw MathError("spectral gap of a disconnected graph");
  SpectralGapReport g;
  if (s.values.size() < 2 || s.degree == 0) return g;
  g.lambda2 = s.values[1];
  g.lambda_star = s.max_abs_nontrivial();
  double d = static_cast<double>(s.degree);
  g.ratio_second = g.lambda2 / d;
  g.one_sided = std::min(1.0, 1.0 - g.ratio_second);
  g.two_sided = 1.0 - g.lambda_star / d;
  return g;
}

}  // namespace cgl
