#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cgl/common.hpp"

namespace cgl {

namespace dense {

inline double& at(std::vector<double>& a, std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  return a[static_cast<std::size_t>(i) * n + j];
}
inline double at(const std::vector<double>& a, std::uint32_t n, std::uint32_t i,
                 std::uint32_t j) {
  return a[static_cast<std::size_t>(i) * n + j];
}

/// Householder reduction to tridiagonal form, values only: d gets the
/// diagonal, e the subdiagonal (e[i] couples d[i] and d[i+1], e[n-1] = 0).
/// Operates on the lower triangle in place.
inline void tridiagonalize(std::vector<double>& a, std::uint32_t n, std::vector<double>& d,
                           std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  if (n == 0) return;
  std::vector<double> w(n, 0.0);  // scratch for the rank-two update vector
  for (std::uint32_t i = n - 1; i >= 1; --i) {
    std::uint32_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (i > 1) {
      for (std::uint32_t k = 0; k <= l; ++k) scale += std::fabs(at(a, n, i, k));
      if (scale == 0.0) {
        e[i] = at(a, n, i, l);
      } else {
        for (std::uint32_t k = 0; k <= l; ++k) {
          at(a, n, i, k) /= scale;
          h += at(a, n, i, k) * at(a, n, i, k);
        }
        double f = at(a, n, i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(a, n, i, l) = f - g;
        f = 0.0;
        for (std::uint32_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::uint32_t k = 0; k <= j; ++k) g += at(a, n, j, k) * at(a, n, i, k);
          for (std::uint32_t k = j + 1; k <= l; ++k) g += at(a, n, k, j) * at(a, n, i, k);
          w[j] = g / h;
          f += w[j] * at(a, n, i, j);
        }
        double hh = f / (h + h);
        for (std::uint32_t j = 0; j <= l; ++j) {
          f = at(a, n, i, j);
          w[j] = g = w[j] - hh * f;
          for (std::uint32_t k = 0; k <= j; ++k)
            at(a, n, j, k) -= f * w[k] + g * at(a, n, i, k);
        }
      }
    } else {
      e[i] = at(a, n, i, l);
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) d[i] = at(a, n, i, i);
}

/// Implicit-shift QL on a tridiagonal matrix; eigenvalues land in d.
/// On entry e[i] couples d[i-1] and d[i] (as tridiagonalize leaves it);
/// the loop below renumbers so e[i] couples d[i] and d[i+1].
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::uint32_t n) {
  if (n == 0) return;
  for (std::uint32_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::uint32_t l = 0; l < n; ++l) {
    int iter = 0;
    std::uint32_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= DBL_EPSILON * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw MathError("eigensolver failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::uint32_t i = m; i-- > l;) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace dense

/// All eigenvalues of a dense symmetric matrix, sorted descending.
/// Deterministic: fixed reduction and iteration order, no randomization.
inline std::vector<double> eigen_symmetric_values(std::vector<double> a, std::uint32_t n) {
  std::vector<double> d, e;
  dense::tridiagonalize(a, n, d, e);
  dense::ql_implicit(d, e, n);
  std::sort(d.begin(), d.end(), std::greater<double>());
  return d;
}

/// LU factorization with partial pivoting, in place; perm holds row swaps.
/// Returns false on exact singularity.
inline bool lu_factor(std::vector<double>& a, std::uint32_t n, std::vector<std::uint32_t>& perm) {
  perm.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (std::uint32_t k = 0; k < n; ++k) {
    std::uint32_t piv = k;
    double best = std::fabs(dense::at(a, n, k, k));
    for (std::uint32_t i = k + 1; i < n; ++i) {
      double v = std::fabs(dense::at(a, n, i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return false;
    if (piv != k) {
      for (std::uint32_t j = 0; j < n; ++j)
        std::swap(dense::at(a, n, k, j), dense::at(a, n, piv, j));
      std::swap(perm[k], perm[piv]);
    }
    for (std::uint32_t i = k + 1; i < n; ++i) {
      double m = dense::at(a, n, i, k) / dense::at(a, n, k, k);
      dense::at(a, n, i, k) = m;
      for (std::uint32_t j = k + 1; j < n; ++j)
        dense::at(a, n, i, j) -= m * dense::at(a, n, k, j);
    }
  }
  return true;
}

inline std::vector<double> lu_solve(const std::vector<double>& lu, std::uint32_t n,
                                    const std::vector<std::uint32_t>& perm,
                                    const std::vector<double>& b) {
  std::vector<double> x(n);
  for (std::uint32_t i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < i; ++j) x[i] -= dense::at(lu, n, i, j) * x[j];
  for (std::uint32_t i = n; i-- > 0;) {
    for (std::uint32_t j = i + 1; j < n; ++j) x[i] -= dense::at(lu, n, i, j) * x[j];
    x[i] /= dense::at(lu, n, i, i);
  }
  return x;
}

/// Eigenvector for an eigenvalue estimate via shifted inverse iteration.
inline std::vector<double> inverse_iteration(const std::vector<double>& a, std::uint32_t n,
                                             double lambda) {
  double shift = lambda;
  std::vector<double> b;
  std::vector<std::uint32_t> perm;
  for (int attempt = 0; attempt < 5; ++attempt) {
    b = a;
    for (std::uint32_t i = 0; i < n; ++i) dense::at(b, n, i, i) -= shift;
    if (lu_factor(b, n, perm)) break;
    shift += (attempt + 1) * 1e-10 * (std::fabs(lambda) + 1.0);
  }
  auto rng = seeded_rng(987654321u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  for (int it = 0; it < 4; ++it) {
    v = lu_solve(b, n, perm, v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw MathError("inverse iteration collapsed");
    for (double& x : v) x /= norm;
  }
  return v;
}

/// Pivoted Gram-Schmidt orthonormal basis of the column space of an n x n
/// projector; columns are chosen greedily by the largest residual norm
/// (ties break to the lowest index).
inline std::vector<std::vector<double>> projector_column_basis(const std::vector<double>& p,
                                                               std::uint32_t n,
                                                               double tol = 1e-8) {
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < n; ++i) cols[j][i] = dense::at(p, n, i, j);
  std::vector<double> norm2(n);
  std::vector<bool> used(n, false);
  for (std::uint32_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (double x : cols[j]) s += x * x;
    norm2[j] = s;
  }
  std::vector<std::vector<double>> basis;
  while (true) {
    std::uint32_t best = n;
    double bestv = tol;
    for (std::uint32_t j = 0; j < n; ++j)
      if (!used[j] && norm2[j] > bestv) {
        bestv = norm2[j];
        best = j;
      }
    if (best == n) break;
    used[best] = true;
    std::vector<double>& v = cols[best];
    double norm = std::sqrt(norm2[best]);
    for (double& x : v) x /= norm;
    // one re-orthogonalization pass keeps the basis clean
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) dot += b[i] * v[i];
        for (std::uint32_t i = 0; i < n; ++i) v[i] -= dot * b[i];
      }
      double s = 0.0;
      for (double x : v) s += x * x;
      s = std::sqrt(s);
      if (s < 1e-12) {
        v.clear();
        break;
      }
      for (double& x : v) x /= s;
    }
    if (v.empty()) {
      norm2[best] = 0.0;
      continue;
    }
    basis.push_back(v);
    for (std::uint32_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      double dot = 0.0;
      for (std::uint32_t i = 0; i < n; ++i) dot += v[i] * cols[j][i];
      for (std::uint32_t i = 0; i < n; ++i) cols[j][i] -= dot * v[i];
      double s = 0.0;
      for (double x : cols[j]) s += x * x;
      norm2[j] = s;
    }
  }
  return basis;
}

/// B^T A B for an orthonormal basis B (r columns of length n); the result is
/// symmetrized to scrub roundoff before an eigensolve.
inline std::vector<double> compress_matrix(const std::vector<double>& a, std::uint32_t n,
                                           const std::vector<std::vector<double>>& basis) {
  std::uint32_t r = static_cast<std::uint32_t>(basis.size());
  std::vector<double> ab(static_cast<std::size_t>(n) * r, 0.0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < r; ++j) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < n; ++k) s += dense::at(a, n, i, k) * basis[j][k];
      ab[static_cast<std::size_t>(i) * r + j] = s;
    }
  std::vector<double> m(static_cast<std::size_t>(r) * r, 0.0);
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < n; ++k)
        s += basis[i][k] * ab[static_cast<std::size_t>(k) * r + j];
      m[static_cast<std::size_t>(i) * r + j] = s;
    }
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = i + 1; j < r; ++j) {
      double v = 0.5 * (m[static_cast<std::size_t>(i) * r + j] +
                        m[static_cast<std::size_t>(j) * r + i]);
      m[static_cast<std::size_t>(i) * r + j] = v;
      m[static_cast<std::size_t>(j) * r + i] = v;
    }
  return m;
}

}  // namespace cgl
