#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cgl/graph.hpp"
#include "cgl/io.hpp"

namespace testutil {

inline cgl::GroupPtr cyclic(int n) { return cgl::build_group(cgl::Family::Cyclic, n); }

inline cgl::ConnectionMultiset set_of(const cgl::GroupPtr& g, const std::vector<long>& ints) {
  std::vector<cgl::Elem> elems;
  for (long v : ints) elems.push_back(cgl::parse_element(g, std::to_string(v)));
  return cgl::ConnectionMultiset::from_elems(g, elems);
}

/// Cayley graph of Z/n with the given residues.
inline cgl::VariantGraph circulant(int n, const std::vector<long>& ints) {
  cgl::GroupPtr g = cyclic(n);
  return cgl::build_variant(g, set_of(g, ints), cgl::Variant::Cayley);
}

/// Exact circulant spectrum: lambda_k = sum_s 2pi-character values.
inline std::vector<double> circulant_eigenvalues(int n, const std::vector<long>& residues) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (long s : residues) sum += std::cos(2.0 * M_PI * k * s / n);
    v[k] = sum;
  }
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

inline double fact(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline bool close(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

inline bool multisets_close(std::vector<double> a, std::vector<double> b, double tol = 1e-6) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace testutil
