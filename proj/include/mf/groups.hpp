#pragma once

// Finite subgroups of GL_2 over F_q or V_N: closure, lifting of cyclotomic
// generators, reduction mod p, pseudo-reflections and conjugacy classes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mf/arith.hpp"
#include "mf/errors.hpp"

namespace mf {

inline constexpr std::size_t kDefaultOrderCap = 512;

/// 2x2 matrix, row-major.
template <class S>
struct Mat2 {
  std::array<S, 4> a;

  static Mat2 identity(const typename S::ring_type& ring) { return {{ring.one(), ring.zero(), ring.zero(), ring.one()}}; }
  static Mat2 diag(const S& x, const S& y) { return {{x, x.ring().zero(), y.ring().zero(), y}}; }

  const S& operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }
  S& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
  typename S::ring_type ring() const { return a[0].ring(); }

  S det() const { return a[0] * a[3] - a[1] * a[2]; }
  S trace() const { return a[0] + a[3]; }
  bool is_identity() const { return a[0].is_one() && a[1].is_zero() && a[2].is_zero() && a[3].is_one(); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
             x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {{x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]}};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a; }

  Mat2 inverse() const {
    const S inv = det().inverse();
    return {{a[3] * inv, -a[1] * inv, -a[2] * inv, a[0] * inv}};
  }

  Mat2 pow(std::uint64_t e) const {
    Mat2 result = identity(ring());
    Mat2 base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      base = base * base;
      e >>= 1U;
    }
    return result;
  }

  /// Canonical key: concatenated reduced coefficient vectors.
  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k;
    k.reserve(4 * static_cast<std::size_t>(a[0].degree()));
    for (const auto& x : a) k.insert(k.end(), x.coeffs().begin(), x.coeffs().end());
    return k;
  }

  std::string to_string() const {
    return "[[" + a[0].to_string() + "," + a[1].to_string() + "],[" + a[2].to_string() + "," + a[3].to_string() + "]]";
  }
};

template <class S>
class MatrixGroup {
 public:
  using scalar_type = S;
  using ring_type = typename S::ring_type;

  MatrixGroup() = default;
  MatrixGroup(ring_type ring, std::vector<Mat2<S>> elements, std::vector<std::uint32_t> table,
              std::vector<std::size_t> generators)
      : ring_(ring), elements_(std::move(elements)), table_(std::move(table)), generators_(std::move(generators)) {
    const std::size_t n = elements_.size();
    inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mul(i, j) == 0) {
          inverse_[i] = j;
          break;
        }
      }
    }
  }

  const ring_type& ring() const { return ring_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Mat2<S>>& elements() const { return elements_; }
  const Mat2<S>& element(std::size_t i) const { return elements_[i]; }
  const std::vector<std::size_t>& generator_indices() const { return generators_; }
  const std::vector<std::uint32_t>& mult_table() const { return table_; }

  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * elements_.size() + j]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  std::size_t power(std::size_t i, std::uint64_t e) const {
    std::size_t r = 0;
    for (std::uint64_t t = 0; t < e; ++t) r = mul(r, i);
    return r;
  }

  std::uint64_t element_order(std::size_t i) const {
    std::uint64_t k = 1;
    for (std::size_t x = i; x != 0; x = mul(x, i)) ++k;
    return k;
  }

  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < order(); ++i) e = std::lcm(e, element_order(i));
    return e;
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = i + 1; j < order(); ++j)
        if (mul(i, j) != mul(j, i)) return false;
    return true;
  }

  bool in_special_linear() const {
    return std::all_of(elements_.begin(), elements_.end(), [](const Mat2<S>& g) { return g.det().is_one(); });
  }

  /// FNV-1a over the ring parameters and the sorted element keys.
  std::string fingerprint() const {
    std::vector<std::vector<std::uint64_t>> keys;
    keys.reserve(order());
    for (const auto& g : elements_) keys.push_back(g.key());
    std::sort(keys.begin(), keys.end());
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xFFU;
        h *= 1099511628211ULL;
      }
    };
    mix(ring_.p());
    mix(static_cast<std::uint64_t>(ring_.m()));
    mix(static_cast<std::uint64_t>(ring_.N()));
    for (const auto& k : keys)
      for (auto v : k) mix(v);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  ring_type ring_;
  std::vector<Mat2<S>> elements_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> inverse_;
};

using FqGroup = MatrixGroup<FqScalar>;
using DvrGroup = MatrixGroup<DvrScalar>;

/// Breadth-first closure of the generators; identity is element 0.
template <class S>
MatrixGroup<S> close_group(const typename S::ring_type& ring, const std::vector<Mat2<S>>& generators,
                           std::size_t cap = kDefaultOrderCap) {
  for (const auto& g : generators) {
    if (!g.det().is_unit()) throw Error(ErrorKind::SingularGenerator, "generator is not invertible", g.to_string());
  }
  std::vector<Mat2<S>> elements{Mat2<S>::identity(ring)};
  std::map<std::vector<std::uint64_t>, std::uint32_t> index{{elements[0].key(), 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      Mat2<S> prod = elements[head] * g;
      auto key = prod.key();
      if (index.count(key)) continue;
      if (elements.size() >= cap) {
        throw Error(ErrorKind::OrderCapExceeded, "closure exceeds order cap " + std::to_string(cap));
      }
      index.emplace(std::move(key), static_cast<std::uint32_t>(elements.size()));
      elements.push_back(std::move(prod));
    }
  }
  const std::size_t n = elements.size();
  if (n % ring.p() == 0) {
    throw Error(ErrorKind::CharacteristicDividesOrder,
                "p = " + std::to_string(ring.p()) + " divides |G| = " + std::to_string(n));
  }
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find((elements[i] * elements[j]).key());
      if (it == index.end()) throw Error(ErrorKind::NotAGroup, "product escaped the closure");
      table[i * n + j] = it->second;
    }
  }
  std::vector<std::size_t> gen_idx;
  for (const auto& g : generators) gen_idx.push_back(index.at(g.key()));
  return MatrixGroup<S>(ring, std::move(elements), std::move(table), std::move(gen_idx));
}

// ---------------------------------------------------------------------------
// Cyclotomic-integer generator specs

/// sum_k coeff[k] z^k with z a primitive order_hint-th root of unity; k may be negative.
using CyclotomicEntry = std::map<std::int64_t, std::int64_t>;
using CyclotomicMatrix = std::array<std::array<CyclotomicEntry, 2>, 2>;

struct CyclotomicMatrixSpec {
  std::uint64_t order_hint = 1;
  std::vector<CyclotomicMatrix> generators;
};

template <class S>
S substitute_root(const CyclotomicEntry& entry, const S& root, std::uint64_t order) {
  S acc = root.ring().zero();
  for (const auto& [k, c] : entry) {
    const auto o = static_cast<std::int64_t>(order);
    const auto e = static_cast<std::uint64_t>(((k % o) + o) % o);
    acc += root.pow(e).scaled(c);
  }
  return acc;
}

/// Substitutes theta (the unique lift of the fixed primitive root zeta) for z
/// and closes the resulting generators.
inline DvrGroup lift_group(const CyclotomicMatrixSpec& spec, const DvrRing& ring, std::size_t cap = kDefaultOrderCap) {
  if (spec.order_hint < 1) throw Error(ErrorKind::ValidationError, "zeta_order must be >= 1");
  const FqField field = residue_field(ring);
  const DvrScalar theta = hensel_lift_root(ring, spec.order_hint, primitive_root_of_unity(field, spec.order_hint));
  std::vector<Mat2<DvrScalar>> gens;
  for (std::size_t gi = 0; gi < spec.generators.size(); ++gi) {
    const auto& g = spec.generators[gi];
    Mat2<DvrScalar> m{{substitute_root(g[0][0], theta, spec.order_hint), substitute_root(g[0][1], theta, spec.order_hint),
                       substitute_root(g[1][0], theta, spec.order_hint), substitute_root(g[1][1], theta, spec.order_hint)}};
    if (!m.det().is_unit())
      throw Error(ErrorKind::SingularGenerator, "generator " + std::to_string(gi) + " is singular", m.to_string());
    // A generator must have finite order within the cap to generate a finite group under the cap.
    Mat2<DvrScalar> power = m;
    std::size_t k = 1;
    while (!power.is_identity()) {
      if (++k > cap) throw Error(ErrorKind::NotAGroup, "generator " + std::to_string(gi) + " has order above the cap", m.to_string());
      power = power * m;
    }
    gens.push_back(m);
  }
  return close_group<DvrScalar>(ring, gens, cap);
}

/// Entrywise reduction mod p; element order and indices are preserved.
inline FqGroup reduce_group(const DvrGroup& group) {
  const FqField field = residue_field(group.ring());
  std::vector<Mat2<FqScalar>> reduced;
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  for (std::size_t i = 0; i < group.order(); ++i) {
    const auto& g = group.element(i);
    Mat2<FqScalar> r{{reduce_scalar(g.a[0]), reduce_scalar(g.a[1]), reduce_scalar(g.a[2]), reduce_scalar(g.a[3])}};
    auto [it, fresh] = seen.emplace(r.key(), i);
    if (!fresh) {
      throw Error(ErrorKind::InjectivityFailure,
                  "elements " + std::to_string(it->second) + " and " + std::to_string(i) + " reduce to the same matrix",
                  r.to_string());
    }
    reduced.push_back(std::move(r));
  }
  return FqGroup(field, std::move(reduced), group.mult_table(), group.generator_indices());
}

/// Non-identity elements with rank(g - I) <= 1. For a nonzero 2x2 matrix this
/// is det(g - I) = 0.
inline std::vector<std::size_t> pseudo_reflections(const FqGroup& group) {
  std::vector<std::size_t> out;
  const auto id = Mat2<FqScalar>::identity(group.ring());
  for (std::size_t i = 1; i < group.order(); ++i) {
    if ((group.element(i) - id).det().is_zero()) out.push_back(i);
  }
  return out;
}

struct ConjugacyClasses {
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;  // smallest member index
  std::vector<std::size_t> sizes;

  std::size_t count() const { return representatives.size(); }
};

template <class S>
ConjugacyClasses conjugacy_classes(const MatrixGroup<S>& group) {
  const std::size_t n = group.order();
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  ConjugacyClasses out;
  out.class_of.assign(n, unassigned);
  for (std::size_t x = 0; x < n; ++x) {
    if (out.class_of[x] != unassigned) continue;
    const std::size_t cls = out.representatives.size();
    out.representatives.push_back(x);
    std::size_t size = 0;
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t y = group.mul(group.mul(g, x), group.inverse(g));
      if (out.class_of[y] == unassigned) {
        out.class_of[y] = cls;
        ++size;
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

}  // namespace mf
