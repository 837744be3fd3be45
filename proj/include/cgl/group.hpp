#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgl/common.hpp"
#include "cgl/field.hpp"

namespace cgl {

enum class Family {
  Cyclic,
  ProductCyclic,  // Z^2 / nZ^2
  Symmetric,
  Alternating,
  Dihedral,
  AdditiveField,
  SL2,
  GL2,
  PSL2,
  PGL2
};

inline const char* family_tag(Family f) {
  switch (f) {
    case Family::Cyclic: return "cyclic";
    case Family::ProductCyclic: return "z2";
    case Family::Symmetric: return "sym";
    case Family::Alternating: return "alt";
    case Family::Dihedral: return "dihedral";
    case Family::AdditiveField: return "addfield";
    case Family::SL2: return "sl2";
    case Family::GL2: return "gl2";
    case Family::PSL2: return "psl2";
    case Family::PGL2: return "pgl2";
  }
  return "?";
}

struct GroupSpec {
  Family family;
  int n = 0;  // order parameter: n for Cyclic/..., q for field-based families
  std::optional<poly::Poly> modulus;
};

namespace perm {

inline bool is_even(const Elem& e, int n) {
  std::vector<bool> seen(n, false);
  int transpositions = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = e[j];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

/// Cycle notation, 1-based; identity prints as "e".
inline std::string cycle_string(const Elem& e, int n) {
  std::string s;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i] || e[i] == i) {
      seen[i] = true;
      continue;
    }
    s += "(";
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) s += ",";
      s += std::to_string(j + 1);
      first = false;
      j = e[j];
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

}  // namespace perm

/// A concrete finite group with a fixed deterministic enumeration. Elements
/// are canonical Elem values; mul/inv/id dispatch on the family.
class Group : public std::enable_shared_from_this<Group> {
 public:
  static std::shared_ptr<const Group> make(const GroupSpec& spec) {
    auto g = std::shared_ptr<Group>(new Group(spec));
    g->enumerate();
    return g;
  }

  Family family() const { return spec_.family; }
  int n() const { return spec_.n; }
  const FiniteField& field() const {
    if (!field_) throw std::logic_error("group has no base field");
    return *field_;
  }
  std::size_t order() const { return elems_.size(); }
  const std::vector<Elem>& elements() const { return elems_; }
  bool is_abelian() const { return abelian_; }

  bool contains(const Elem& e) const { return index_.find(e) != index_.end(); }
  std::uint32_t index_of(const Elem& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
      throw UsageError("element " + label(e) + " does not belong to " + spec_string());
    return it->second;
  }
  const Elem& at(std::uint32_t i) const { return elems_[i]; }

  Elem id() const {
    Elem e{};
    if (is_perm()) {
      for (int i = 0; i < spec_.n; ++i) e[i] = static_cast<int16_t>(i);
    } else if (is_matrix()) {
      e[0] = 1;
      e[3] = 1;
    }
    return e;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem r{};
    switch (spec_.family) {
      case Family::Cyclic:
        r[0] = static_cast<int16_t>((a[0] + b[0]) % spec_.n);
        break;
      case Family::ProductCyclic:
        r[0] = static_cast<int16_t>((a[0] + b[0]) % spec_.n);
        r[1] = static_cast<int16_t>((a[1] + b[1]) % spec_.n);
        break;
      case Family::Symmetric:
      case Family::Alternating:
        for (int i = 0; i < spec_.n; ++i) r[i] = a[b[i]];
        break;
      case Family::Dihedral: {
        int n = spec_.n;
        int j = a[1] ? (n - b[0]) % n : b[0];
        r[0] = static_cast<int16_t>((a[0] + j) % n);
        r[1] = static_cast<int16_t>(a[1] ^ b[1]);
        break;
      }
      case Family::AdditiveField:
        r[0] = static_cast<int16_t>(field_->add(a[0], b[0]));
        break;
      default: {
        const FiniteField& f = *field_;
        std::uint32_t m0 = f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2]));
        std::uint32_t m1 = f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3]));
        std::uint32_t m2 = f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2]));
        std::uint32_t m3 = f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3]));
        r[0] = static_cast<int16_t>(m0);
        r[1] = static_cast<int16_t>(m1);
        r[2] = static_cast<int16_t>(m2);
        r[3] = static_cast<int16_t>(m3);
        if (projective()) r = canonicalize(r);
        break;
      }
    }
    return r;
  }

  Elem inv(const Elem& a) const {
    Elem r{};
    switch (spec_.family) {
      case Family::Cyclic:
        r[0] = static_cast<int16_t>((spec_.n - a[0]) % spec_.n);
        break;
      case Family::ProductCyclic:
        r[0] = static_cast<int16_t>((spec_.n - a[0]) % spec_.n);
        r[1] = static_cast<int16_t>((spec_.n - a[1]) % spec_.n);
        break;
      case Family::Symmetric:
      case Family::Alternating:
        for (int i = 0; i < spec_.n; ++i) r[a[i]] = static_cast<int16_t>(i);
        break;
      case Family::Dihedral:
        if (a[1]) {
          r = a;
        } else {
          r[0] = static_cast<int16_t>((spec_.n - a[0]) % spec_.n);
        }
        break;
      case Family::AdditiveField:
        r[0] = static_cast<int16_t>(field_->neg(a[0]));
        break;
      default: {
        // adjugate; for GL2/SL2 divide by det, projectively the scale drops out
        const FiniteField& f = *field_;
        Elem adj{};
        adj[0] = a[3];
        adj[1] = static_cast<int16_t>(f.neg(a[1]));
        adj[2] = static_cast<int16_t>(f.neg(a[2]));
        adj[3] = a[0];
        if (projective()) {
          r = canonicalize(adj);
        } else {
          std::uint32_t dinv = f.inv(det(a));
          for (int i = 0; i < 4; ++i) r[i] = static_cast<int16_t>(f.mul(adj[i], dinv));
        }
        break;
      }
    }
    return r;
  }

  Elem conj(const Elem& h, const Elem& g) const { return mul(mul(h, g), inv(h)); }

  std::uint32_t det(const Elem& a) const {
    const FiniteField& f = *field_;
    return f.sub(f.mul(a[0], a[3]), f.mul(a[1], a[2]));
  }

  /// Projective scaling: first nonzero entry in row-major order becomes 1.
  Elem canonicalize(const Elem& a) const {
    const FiniteField& f = *field_;
    for (int i = 0; i < 4; ++i) {
      if (a[i] != 0) {
        std::uint32_t s = f.inv(a[i]);
        Elem r{};
        for (int j = 0; j < 4; ++j) r[j] = static_cast<int16_t>(f.mul(a[j], s));
        return r;
      }
    }
    throw MathError("zero matrix cannot be canonicalized");
  }

  std::string label(const Elem& e) const {
    switch (spec_.family) {
      case Family::Cyclic: return std::to_string(e[0]);
      case Family::ProductCyclic:
        return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
      case Family::Symmetric:
      case Family::Alternating: return perm::cycle_string(e, spec_.n);
      case Family::Dihedral: {
        std::string s;
        if (e[0]) s += "r" + std::to_string(e[0]);
        if (e[1]) s += "s";
        return s.empty() ? "e" : s;
      }
      case Family::AdditiveField: return field_->label(e[0]);
      default:
        return "[[" + field_->label(e[0]) + "," + field_->label(e[1]) + "],[" +
               field_->label(e[2]) + "," + field_->label(e[3]) + "]]";
    }
  }

  std::string spec_string() const {
    std::string s = std::string(family_tag(spec_.family)) + ":" + std::to_string(spec_.n);
    if (spec_.family == Family::AdditiveField && field_->k() > 1)
      s += ":" + FiniteField::modulus_string(field_->modulus());
    return s;
  }

  bool is_perm() const {
    return spec_.family == Family::Symmetric || spec_.family == Family::Alternating;
  }
  bool is_matrix() const {
    switch (spec_.family) {
      case Family::SL2:
      case Family::GL2:
      case Family::PSL2:
      case Family::PGL2: return true;
      default: return false;
    }
  }
  bool projective() const {
    return spec_.family == Family::PSL2 || spec_.family == Family::PGL2;
  }

 private:
  explicit Group(const GroupSpec& spec) : spec_(spec) {
    int n = spec_.n;
    switch (spec_.family) {
      case Family::Cyclic:
        if (n < 1 || n > 32767) throw UsageError("cyclic order must be in [1, 32767]");
        abelian_ = true;
        break;
      case Family::ProductCyclic:
        if (n < 1 || n > 316) throw UsageError("z2 modulus must be in [1, 316]");
        abelian_ = true;
        break;
      case Family::Symmetric:
        if (n < 1 || n > 9) throw UsageError("sym degree must be in [1, 9]");
        abelian_ = n <= 2;
        break;
      case Family::Alternating:
        if (n < 1 || n > 9) throw UsageError("alt degree must be in [1, 9]");
        abelian_ = n <= 3;
        break;
      case Family::Dihedral:
        if (n < 1 || n > 16383) throw UsageError("dihedral parameter must be in [1, 16383]");
        abelian_ = n <= 2;
        break;
      default: {
        std::uint64_t p;
        int k;
        if (n < 2 || !prime_power(static_cast<std::uint64_t>(n), p, k))
          throw UsageError("field order must be a prime power, got " + std::to_string(n));
        if (spec_.family != Family::AdditiveField && n > 61)
          throw UsageError("matrix group field order capped at 61");
        field_ = FiniteField::make(static_cast<int>(p), k, spec_.modulus);
        abelian_ = spec_.family == Family::AdditiveField;
        break;
      }
    }
  }

  void enumerate() {
    switch (spec_.family) {
      case Family::Cyclic:
        for (int i = 0; i < spec_.n; ++i) {
          Elem e{};
          e[0] = static_cast<int16_t>(i);
          push(e);
        }
        break;
      case Family::ProductCyclic:
        for (int a = 0; a < spec_.n; ++a)
          for (int b = 0; b < spec_.n; ++b) {
            Elem e{};
            e[0] = static_cast<int16_t>(a);
            e[1] = static_cast<int16_t>(b);
            push(e);
          }
        break;
      case Family::Symmetric:
      case Family::Alternating: {
        std::vector<int16_t> img(spec_.n);
        std::iota(img.begin(), img.end(), 0);
        do {
          Elem e{};
          std::copy(img.begin(), img.end(), e.begin());
          if (spec_.family == Family::Alternating && !perm::is_even(e, spec_.n)) continue;
          push(e);
        } while (std::next_permutation(img.begin(), img.end()));
        break;
      }
      case Family::Dihedral:
        for (int f = 0; f < 2; ++f)
          for (int i = 0; i < spec_.n; ++i) {
            Elem e{};
            e[0] = static_cast<int16_t>(i);
            e[1] = static_cast<int16_t>(f);
            push(e);
          }
        break;
      case Family::AdditiveField:
        for (std::uint32_t i = 0; i < field_->q(); ++i) {
          Elem e{};
          e[0] = static_cast<int16_t>(i);
          push(e);
        }
        break;
      default: {
        std::uint32_t q = field_->q();
        for (std::uint32_t a = 0; a < q; ++a)
          for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t c = 0; c < q; ++c)
              for (std::uint32_t d = 0; d < q; ++d) {
                Elem e{};
                e[0] = static_cast<int16_t>(a);
                e[1] = static_cast<int16_t>(b);
                e[2] = static_cast<int16_t>(c);
                e[3] = static_cast<int16_t>(d);
                std::uint32_t dt = det(e);
                switch (spec_.family) {
                  case Family::SL2:
                    if (dt != 1) continue;
                    break;
                  case Family::GL2:
                    if (dt == 0) continue;
                    break;
                  case Family::PGL2:
                    if (dt == 0 || !canonical(e)) continue;
                    break;
                  case Family::PSL2:
                    if (dt == 0 || !canonical(e) || !field_->is_square(dt)) continue;
                    break;
                  default: break;
                }
                push(e);
              }
        break;
      }
    }
  }

  bool canonical(const Elem& e) const {
    for (int i = 0; i < 4; ++i) {
      if (e[i] != 0) return e[i] == 1;
    }
    return false;
  }

  void push(const Elem& e) {
    index_.emplace(e, static_cast<std::uint32_t>(elems_.size()));
    elems_.push_back(e);
  }

  GroupSpec spec_;
  std::optional<FiniteField> field_;
  std::vector<Elem> elems_;
  std::unordered_map<Elem, std::uint32_t, ElemHash> index_;
  bool abelian_ = false;
};

using GroupPtr = std::shared_ptr<const Group>;

inline GroupPtr build_group(Family f, int n, std::optional<poly::Poly> modulus = {}) {
  return Group::make(GroupSpec{f, n, std::move(modulus)});
}

}  // namespace cgl
