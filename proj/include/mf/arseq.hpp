#pragma once

// Koszul fixed-point sequences
//   (S (x) /\^2 E (x) P_i)^G -> (S (x) E (x) P_i)^G -> (S (x) P_i)^G -> P_i^G -> 0
// built degree by degree for abelian G, together with the character-level
// facts around them: fixed points of the P_i, the middle term versus the
// McKay arrows, and the determinant twist that plays the role of tau.
//
// Degree d strand: the left node uses S_{d-2}, the middle S_{d-1}, the right S_d.

#include <array>
#include <string>
#include <vector>

#include "mf/characters.hpp"
#include "mf/invariants.hpp"
#include "mf/mckay.hpp"
#include "mf/poly.hpp"

namespace mf {

struct StrandNode {
  int poly_degree = 0;               // degree of the S-factor
  std::size_t ambient_dim = 0;
  std::vector<Row<FqScalar>> basis;  // rows in ambient coordinates

  std::size_t dim() const { return basis.size(); }
};

struct KoszulStrand {
  std::size_t i = 0;
  int d = 0;
  std::array<StrandNode, 4> nodes;  // left, middle, right, P_i^G (nonzero ambient only for d = 0)
  std::vector<Row<FqScalar>> left_map;    // images of left basis vectors in middle ambient coordinates
  std::vector<Row<FqScalar>> middle_map;  // images of middle basis vectors in right ambient coordinates
  std::size_t left_rank = 0, middle_rank = 0, augmentation_rank = 0;
  bool complex_holds = false;

  bool left_injective() const { return left_rank == nodes[0].dim(); }
  bool middle_exact() const { return middle_rank + left_rank == nodes[1].dim(); }
  std::size_t right_cokernel() const { return nodes[2].dim() - middle_rank; }
  bool right_exact() const {
    return augmentation_rank == nodes[3].dim() && middle_rank + augmentation_rank == nodes[2].dim();
  }
  bool verified() const {
    const bool corner = i == 0 && d == 0;
    return complex_holds && left_injective() && middle_exact() && right_exact() && right_cokernel() == (corner ? 1u : 0u);
  }
};

namespace detail {

inline std::vector<Row<FqScalar>> identity_rows(const FqField& k, std::size_t n) {
  std::vector<Row<FqScalar>> m(n, Row<FqScalar>(n, k.zero()));
  for (std::size_t r = 0; r < n; ++r) m[r][r] = k.one();
  return m;
}

/// {v : chi(g) M_g v = v for every generator g}.
inline std::vector<Row<FqScalar>> twisted_fixed_space(const FqGroup& group, const std::vector<FqScalar>& chi_values,
                                                      const std::function<std::vector<Row<FqScalar>>(const Mat2<FqScalar>&)>& rep,
                                                      std::size_t dim) {
  const FqField k = group.ring();
  if (dim == 0) return {};
  std::vector<Row<FqScalar>> stacked;
  const auto& gens = group.generator_indices();
  for (std::size_t t = 0; t < gens.size(); ++t) {
    auto m = rep(group.element(gens[t]));
    for (auto& row : m) {
      for (auto& x : row) x = chi_values[t] * x;
    }
    for (std::size_t r = 0; r < dim; ++r) m[r][r] -= k.one();
    for (auto& row : m) stacked.push_back(std::move(row));
  }
  if (stacked.empty()) return identity_rows(k, dim);
  return kernel(stacked, dim, k.zero());
}

inline std::vector<Row<FqScalar>> kron_with_defining(const std::vector<Row<FqScalar>>& a, const Mat2<FqScalar>& g) {
  const std::size_t n = a.size();
  std::vector<Row<FqScalar>> out(2 * n, Row<FqScalar>(2 * n, g.ring().zero()));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t mp = 0; mp < n; ++mp)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 2; ++j) out[2 * m + k][2 * mp + j] = a[m][mp] * g(k, j);
  return out;
}

inline std::vector<FqScalar> generator_character_values(const FqGroup& group, const CharacterTable& table, std::size_t chi) {
  std::vector<FqScalar> out;
  for (std::size_t g : group.generator_indices())
    out.push_back(character_value_in_field(table, group.ring(), chi, table.classes.class_of[g]));
  return out;
}

}  // namespace detail

/// Builds the degree-d strand for character i and records ranks; no assertion.
inline KoszulStrand build_koszul_strand(const FqGroup& group, const CharacterTable& table, std::size_t i, int d) {
  if (!group.is_abelian()) throw Error(ErrorKind::NonAbelianUnsupported, "Koszul strands need an abelian group");
  if (d < 0) throw Error(ErrorKind::ValidationError, "degree must be nonnegative");
  const FqField k = group.ring();
  const auto chi = detail::generator_character_values(group, table, i);
  auto monomial_count = [](int e) { return e < 0 ? std::size_t{0} : static_cast<std::size_t>(e) + 1; };

  KoszulStrand s;
  s.i = i;
  s.d = d;
  s.nodes[0] = {d - 2, monomial_count(d - 2), {}};
  s.nodes[1] = {d - 1, 2 * monomial_count(d - 1), {}};
  s.nodes[2] = {d, monomial_count(d), {}};
  s.nodes[3] = {0, d == 0 ? std::size_t{1} : std::size_t{0}, {}};

  s.nodes[0].basis = detail::twisted_fixed_space(
      group, chi,
      [&](const Mat2<FqScalar>& g) {
        auto m = action_matrix(g, d - 2);
        const FqScalar det = g.det();
        for (auto& row : m)
          for (auto& x : row) x = det * x;
        return m;
      },
      s.nodes[0].ambient_dim);
  s.nodes[1].basis = detail::twisted_fixed_space(
      group, chi, [&](const Mat2<FqScalar>& g) { return detail::kron_with_defining(action_matrix(g, d - 1), g); },
      s.nodes[1].ambient_dim);
  s.nodes[2].basis = detail::twisted_fixed_space(group, chi, [&](const Mat2<FqScalar>& g) { return action_matrix(g, d); },
                                                 s.nodes[2].ambient_dim);
  s.nodes[3].basis = detail::twisted_fixed_space(
      group, chi, [&](const Mat2<FqScalar>&) { return detail::identity_rows(k, 1); }, s.nodes[3].ambient_dim);

  // Monomial x1^a x2^b of degree a + b sits at index b.
  for (const auto& v : s.nodes[0].basis) {
    Row<FqScalar> img(s.nodes[1].ambient_dim, k.zero());
    for (std::size_t b = 0; b < v.size(); ++b) {
      // m (x) x1^x2  ->  m x1 (x) x2 - m x2 (x) x1
      img[2 * b + 1] += v[b];
      img[2 * (b + 1) + 0] -= v[b];
    }
    s.left_map.push_back(std::move(img));
  }
  auto apply_middle = [&](const Row<FqScalar>& v) {
    Row<FqScalar> img(s.nodes[2].ambient_dim, k.zero());
    for (std::size_t b = 0; 2 * b < v.size(); ++b) {
      img[b] += v[2 * b];          // m (x) x1 -> m x1
      img[b + 1] += v[2 * b + 1];  // m (x) x2 -> m x2
    }
    return img;
  };
  for (const auto& v : s.nodes[1].basis) s.middle_map.push_back(apply_middle(v));

  s.complex_holds = true;
  for (const auto& v : s.left_map) {
    for (const auto& x : apply_middle(v))
      if (!x.is_zero()) s.complex_holds = false;
  }
  std::vector<Row<FqScalar>> augmentation;
  if (d == 0) {
    for (const auto& v : s.nodes[2].basis) augmentation.push_back(v);
  }
  // the augmentation kills everything in positive degree, and in degree 0 the middle node is empty
  s.left_rank = rank_of(s.left_map);
  s.middle_rank = rank_of(s.middle_map);
  s.augmentation_rank = s.nodes[3].dim() == 0 ? 0 : rank_of(std::move(augmentation));
  return s;
}

/// Degree-d strand with the complex property and exactness asserted.
inline KoszulStrand koszul_strand(const FqGroup& group, const CharacterTable& table, std::size_t i, int d) {
  KoszulStrand s = build_koszul_strand(group, table, i, d);
  if (!s.verified()) {
    throw Error(ErrorKind::MismatchDetected, "Koszul strand fails exactness", "i=" + std::to_string(i) + ",d=" + std::to_string(d));
  }
  return s;
}

/// 1 iff W_i^G != 0, i.e. iff W_i is trivial; cross-checked by averaging the
/// character over G inside F_q.
inline std::vector<int> fixed_points_of_projectives(const CharacterTable& table, const FqField& field) {
  const FqScalar inv = field.from_int(static_cast<std::int64_t>(table.group_order)).inverse();
  ClassFunction trivial(table.classes.count(), Cyclotomic::from_int(table.exponent, 1));
  std::vector<int> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::int64_t exact = table.inner_product(table.characters[i], trivial);
    FqScalar avg = field.zero();
    for (std::size_t c = 0; c < table.classes.count(); ++c)
      avg += field.from_int(static_cast<std::int64_t>(table.classes.sizes[c])) * character_value_in_field(table, field, i, c);
    avg = inv * avg;
    if (avg != field.from_int(exact) || exact != (i == 0 ? 1 : 0))
      throw Error(ErrorKind::MismatchDetected, "fixed points of W_" + std::to_string(i) + " disagree");
    out.push_back(static_cast<int>(exact));
  }
  return out;
}

/// Multiplicities of every W_j in E (x) W_i, asserted equal to column i of the McKay graph.
inline std::vector<std::int64_t> middle_term_decomposition(const CharacterTable& table, std::size_t i) {
  auto mult = table.decompose(table.product(table.chi_std, table.characters.at(i)));
  const auto arrows = mckay_arrows(table, table.chi_std);
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (arrows[j][i] != mult[j])
      throw Error(ErrorKind::MismatchDetected, "middle term of L_" + std::to_string(i) + " disagrees with McKay arrows");
  }
  return mult;
}

/// dim (S_{d-1} (x) E (x) P_i)^G = sum_j c[j][i] dim (S_{d-1} (x) P_j)^G for d = 1..cap.
inline void check_middle_term_graded(const FqGroup& group, const CharacterTable& table, std::size_t i, int cap) {
  const auto mult = middle_term_decomposition(table, i);
  for (int d = 1; d <= cap; ++d) {
    const std::size_t middle = build_koszul_strand(group, table, i, d).nodes[1].dim();
    std::size_t expected = 0;
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (mult[j] > 0) expected += static_cast<std::size_t>(mult[j]) * semi_invariant_basis(group, table, j, d - 1).dim();
    }
    if (middle != expected) {
      throw Error(ErrorKind::MismatchDetected, "graded middle term of L_" + std::to_string(i) + " disagrees",
                  "d=" + std::to_string(d));
    }
  }
}

struct TauVerdict {
  std::size_t det_index = 0;
  std::vector<std::size_t> index_map;  // tau(L_i) = L_{index_map[i]}

  bool fixes_every_index() const {
    for (std::size_t i = 0; i < index_map.size(); ++i)
      if (index_map[i] != i) return false;
    return true;
  }
  std::string description() const {
    if (fixes_every_index()) return "tau fixes every index";
    return "tau twists by det = W_" + std::to_string(det_index);
  }
};

/// tau(L_i) is the semi-invariant module of det (x) W_i.
inline TauVerdict tau_is_det_twist(const CharacterTable& table) {
  TauVerdict v;
  auto det = table.index_of(table.chi_det);
  if (!det) throw Error(ErrorKind::MismatchDetected, "determinant is not an irreducible character");
  v.det_index = *det;
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto j = table.index_of(table.product(table.chi_det, table.characters[i]));
    if (!j) throw Error(ErrorKind::MismatchDetected, "det (x) W_" + std::to_string(i) + " is not irreducible");
    v.index_map.push_back(*j);
  }
  return v;
}

}  // namespace mf
