#pragma once

// Ordinary character tables of finite subgroups of GL_2(F_q) with p not
// dividing |G|. Values live in Z[zeta_e], e = exp(G), so every inner product
// is an exact integer.
//
// Two backends: abelian groups get their characters directly as
// homomorphisms G -> Z/e; everything else goes through the Burnside-Dixon
// eigenvector method over an auxiliary prime field F_l with l = 1 (mod e).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mf/arith.hpp"
#include "mf/cyclotomic.hpp"
#include "mf/groups.hpp"
#include "mf/linalg.hpp"

namespace mf {

inline constexpr std::uint64_t kAuxPrimeBound = 2'000'000;

using ClassFunction = std::vector<Cyclotomic>;

struct CharacterTable {
  std::uint64_t group_order = 0;
  int exponent = 1;
  ConjugacyClasses classes;
  std::vector<std::size_t> inverse_class;  // class of g^{-1}
  std::vector<ClassFunction> characters;   // characters[i][class]
  std::vector<std::int64_t> dims;
  ClassFunction chi_std;                   // trace of the defining representation
  ClassFunction chi_det;                   // determinant of the defining representation
  bool abelian = false;

  std::size_t size() const { return characters.size(); }

  /// <f, g> = (1/|G|) sum_k |C_k| f(C_k) conj(g(C_k)), exact.
  std::int64_t inner_product(const ClassFunction& f, const ClassFunction& g) const {
    Cyclotomic acc(exponent);
    for (std::size_t k = 0; k < classes.count(); ++k) {
      acc += (f[k] * g[k].conj()).scaled(static_cast<std::int64_t>(classes.sizes[k]));
    }
    const std::int64_t total = acc.integer_value();
    if (total % static_cast<std::int64_t>(group_order) != 0)
      throw Error(ErrorKind::MismatchDetected, "inner product not divisible by |G|");
    return total / static_cast<std::int64_t>(group_order);
  }

  ClassFunction product(const ClassFunction& f, const ClassFunction& g) const {
    ClassFunction out;
    out.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out.push_back(f[k] * g[k]);
    return out;
  }

  /// Multiplicity of every irreducible in the class function f.
  std::vector<std::int64_t> decompose(const ClassFunction& f) const {
    std::vector<std::int64_t> out;
    for (const auto& chi : characters) out.push_back(inner_product(f, chi));
    return out;
  }

  std::optional<std::size_t> index_of(const ClassFunction& f) const {
    for (std::size_t i = 0; i < characters.size(); ++i)
      if (characters[i] == f) return i;
    return std::nullopt;
  }
};

namespace detail {

/// Exponents s with zeta^s an eigenvalue of g, where zeta is the fixed
/// primitive e-th root of unity; returned as the unordered pair (s1 <= s2).
template <class S>
std::pair<int, int> eigen_exponents(const Mat2<S>& g, const S& zeta, int e) {
  std::vector<S> powers;
  S z = zeta.ring().one();
  for (int s = 0; s < e; ++s) {
    powers.push_back(z);
    z *= zeta;
  }
  const S tr = g.trace();
  const S det = g.det();
  for (int s1 = 0; s1 < e; ++s1) {
    for (int s2 = s1; s2 < e; ++s2) {
      if (powers[s1] + powers[s2] == tr && powers[s1] * powers[s2] == det) return {s1, s2};
    }
  }
  throw Error(ErrorKind::MismatchDetected, "matrix is not diagonalizable over the e-th roots of unity", g.to_string());
}

/// Trace and determinant of the defining representation, read off the eigenvalues.
inline std::pair<ClassFunction, ClassFunction> standard_characters(const FqGroup& group, const ConjugacyClasses& classes,
                                                                    int e) {
  const FqScalar zeta = primitive_root_of_unity(group.ring(), static_cast<std::uint64_t>(e));
  ClassFunction trace, det;
  for (std::size_t rep : classes.representatives) {
    auto [s1, s2] = eigen_exponents(group.element(rep), zeta, e);
    trace.push_back(Cyclotomic::root_power(e, s1) + Cyclotomic::root_power(e, s2));
    det.push_back(Cyclotomic::root_power(e, s1 + s2));
  }
  return {trace, det};
}

/// Characters of an abelian group as weight vectors w: G -> Z/e, built by
/// extending along the generators one cyclic step at a time.
inline std::vector<std::vector<int>> abelian_weights(const FqGroup& group, int e) {
  const std::size_t n = group.order();
  std::vector<std::size_t> members{0};
  std::vector<bool> in_sub(n, false);
  in_sub[0] = true;
  std::vector<std::vector<int>> chars{std::vector<int>(n, 0)};
  for (std::size_t g : group.generator_indices()) {
    if (in_sub[g]) continue;
    std::size_t r = 1;
    std::size_t gr = g;
    while (!in_sub[gr]) {
      gr = group.mul(gr, g);
      ++r;
    }
    // gr = g^r is the first power back in the subgroup.
    std::vector<std::size_t> new_members;
    std::vector<std::pair<std::size_t, std::size_t>> decomposition;  // element = h * g^s
    std::size_t gs = 0;
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t h : members) {
        const std::size_t x = group.mul(h, gs);
        new_members.push_back(x);
        decomposition.emplace_back(h, s);
      }
      gs = group.mul(gs, g);
    }
    std::vector<std::vector<int>> extended;
    for (const auto& chi : chars) {
      const int target = chi[gr];
      for (int w = 0; w < e; ++w) {
        if ((static_cast<long long>(r) * w - target) % e != 0) continue;
        std::vector<int> next(n, 0);
        for (std::size_t t = 0; t < new_members.size(); ++t) {
          const auto [h, s] = decomposition[t];
          next[new_members[t]] = static_cast<int>((chi[h] + static_cast<long long>(s) * w) % e);
        }
        extended.push_back(std::move(next));
      }
    }
    chars = std::move(extended);
    members = std::move(new_members);
    for (std::size_t x : members) in_sub[x] = true;
  }
  if (members.size() != n) throw Error(ErrorKind::MismatchDetected, "generators do not generate the group");
  return chars;
}

inline std::uint64_t auxiliary_prime(std::uint64_t e, std::uint64_t group_order, std::uint64_t bound) {
  for (std::uint64_t l = e + 1; l <= bound; l += e) {
    if (l > 2 * group_order && is_prime(l)) return l;
  }
  throw Error(ErrorKind::AuxPrimeSearchFailed, "no prime l = 1 mod " + std::to_string(e) + " below " + std::to_string(bound));
}

/// Burnside-Dixon: common eigenvectors of the class multiplication matrices mod l.
inline std::vector<ClassFunction> dixon_characters(const FqGroup& group, const ConjugacyClasses& cls, int e,
                                                   std::uint64_t bound) {
  const std::size_t n = group.order();
  const std::size_t r = cls.count();
  const std::uint64_t ell = auxiliary_prime(static_cast<std::uint64_t>(e), n, bound);
  const FqField fl = make_field(ell, 1);
  const FqScalar zero = fl.zero();
  auto num = [&](std::uint64_t v) { return fl.from_int(static_cast<std::int64_t>(v)); };

  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t x = 0; x < n; ++x) members[cls.class_of[x]].push_back(x);

  // M[i](j, k) = a_{ijk} = #{x in C_i : x^{-1} z_k in C_j}, z_k the class representative.
  std::vector<std::vector<Row<FqScalar>>> mats(r, std::vector<Row<FqScalar>>(r, Row<FqScalar>(r, zero)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      std::vector<std::uint64_t> count(r, 0);
      for (std::size_t x : members[i]) ++count[cls.class_of[group.mul(group.inverse(x), cls.representatives[k])]];
      for (std::size_t j = 0; j < r; ++j) mats[i][j][k] = num(count[j]);
    }
  }

  // Split F_l^r into common eigenspaces.
  std::vector<std::vector<Row<FqScalar>>> work;
  {
    std::vector<Row<FqScalar>> full;
    for (std::size_t j = 0; j < r; ++j) {
      Row<FqScalar> v(r, zero);
      v[j] = fl.one();
      full.push_back(v);
    }
    work.push_back(full);
  }
  std::vector<Row<FqScalar>> eigvecs;
  while (!work.empty()) {
    auto basis = std::move(work.back());
    work.pop_back();
    if (basis.size() == 1) {
      eigvecs.push_back(basis[0]);
      continue;
    }
    Echelon<FqScalar> ech = row_reduce(basis);
    bool split = false;
    for (std::size_t i = 0; i < r && !split; ++i) {
      const std::size_t k = ech.rows.size();
      // Restricted matrix A (k x k): column t holds coordinates of M_i b_t.
      std::vector<Row<FqScalar>> a(k, Row<FqScalar>(k, zero));
      for (std::size_t t = 0; t < k; ++t) {
        Row<FqScalar> image = apply(mats[i], ech.rows[t], zero);
        for (std::size_t u = 0; u < k; ++u) a[u][t] = image[ech.pivots[u]];
      }
      std::vector<std::vector<Row<FqScalar>>> pieces;
      std::size_t covered = 0;
      for (std::uint64_t lam = 0; lam < ell && covered < k; ++lam) {
        auto shifted = a;
        for (std::size_t u = 0; u < k; ++u) shifted[u][u] -= num(lam);
        auto ker = kernel(shifted, k, zero);
        if (ker.empty()) continue;
        covered += ker.size();
        std::vector<Row<FqScalar>> space;
        for (const auto& coords : ker) {
          Row<FqScalar> v(r, zero);
          for (std::size_t u = 0; u < k; ++u)
            for (std::size_t c = 0; c < r; ++c) v[c] += coords[u] * ech.rows[u][c];
          space.push_back(std::move(v));
        }
        pieces.push_back(std::move(space));
      }
      if (covered != k) throw Error(ErrorKind::MismatchDetected, "class matrix not diagonalizable mod l");
      if (pieces.size() > 1) {
        for (auto& piece : pieces) work.push_back(std::move(piece));
        split = true;
      }
    }
    if (!split) throw Error(ErrorKind::MismatchDetected, "class matrices fail to separate a common eigenspace");
  }
  if (eigvecs.size() != r) throw Error(ErrorKind::MismatchDetected, "wrong number of irreducible characters");

  const FqScalar eps = primitive_root_of_unity(fl, static_cast<std::uint64_t>(e));
  const FqScalar e_inv = num(static_cast<std::uint64_t>(e)).inverse();
  std::vector<ClassFunction> out;
  for (auto w : eigvecs) {
    const FqScalar w0 = w[0].inverse();
    for (auto& x : w) x *= w0;
    // chi(1)^2 = |G| / sum_k w_k w_{k*} / |C_k|
    FqScalar denom = zero;
    for (std::size_t k = 0; k < r; ++k) {
      std::size_t kinv = cls.class_of[group.inverse(cls.representatives[k])];
      denom += w[k] * w[kinv] * num(cls.sizes[k]).inverse();
    }
    const FqScalar dsq = num(n) * denom.inverse();
    std::int64_t dim = 0;
    for (std::int64_t d = 1; static_cast<std::uint64_t>(d * d) <= n; ++d) {
      if (num(static_cast<std::uint64_t>(d * d)) == dsq) dim = d;
    }
    if (dim == 0) throw Error(ErrorKind::MismatchDetected, "no integral degree for a Dixon eigenvector");
    std::vector<FqScalar> values;  // chi(C_k) mod l
    for (std::size_t k = 0; k < r; ++k) values.push_back(w[k] * num(static_cast<std::uint64_t>(dim)) * num(cls.sizes[k]).inverse());
    ClassFunction chi;
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t g = cls.representatives[k];
      std::vector<std::int64_t> mult(static_cast<std::size_t>(e), 0);
      std::int64_t total = 0;
      for (int s = 0; s < e; ++s) {
        FqScalar acc = zero;
        std::size_t gt = 0;
        for (int t = 0; t < e; ++t) {
          acc += values[cls.class_of[gt]] * eps.pow(static_cast<std::uint64_t>((e - (static_cast<long long>(s) * t) % e) % e));
          gt = group.mul(gt, g);
        }
        acc *= e_inv;
        const auto m = static_cast<std::int64_t>(acc.coeff(0));
        if (m > dim) throw Error(ErrorKind::MismatchDetected, "eigenvalue multiplicity out of range");
        mult[static_cast<std::size_t>(s)] = m;
        total += m;
      }
      if (total != dim) throw Error(ErrorKind::MismatchDetected, "eigenvalue multiplicities do not sum to the degree");
      chi.push_back(Cyclotomic::from_power_coeffs(e, mult));
    }
    out.push_back(std::move(chi));
  }
  return out;
}

inline void sort_and_validate(CharacterTable& t) {
  const std::size_t r = t.classes.count();
  auto is_trivial = [&](const ClassFunction& f) {
    for (const auto& v : f)
      if (v != Cyclotomic::from_int(t.exponent, 1)) return false;
    return true;
  };
  auto flat = [](const ClassFunction& f) {
    std::vector<std::int64_t> v;
    for (const auto& x : f) v.insert(v.end(), x.coeffs().begin(), x.coeffs().end());
    return v;
  };
  std::sort(t.characters.begin(), t.characters.end(), [&](const ClassFunction& a, const ClassFunction& b) {
    const bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    const auto da = a[0].integer_value(), db = b[0].integer_value();
    if (da != db) return da < db;
    return flat(a) < flat(b);
  });
  t.dims.clear();
  std::int64_t sum_sq = 0;
  for (const auto& chi : t.characters) {
    t.dims.push_back(chi[0].integer_value());
    sum_sq += t.dims.back() * t.dims.back();
  }
  if (t.characters.size() != r) throw Error(ErrorKind::MismatchDetected, "character count differs from class count");
  if (sum_sq != static_cast<std::int64_t>(t.group_order)) throw Error(ErrorKind::MismatchDetected, "sum of squared degrees differs from |G|");
  if (!is_trivial(t.characters[0])) throw Error(ErrorKind::MismatchDetected, "trivial character missing");
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (t.inner_product(t.characters[i], t.characters[j]) != (i == j ? 1 : 0))
        throw Error(ErrorKind::MismatchDetected, "row orthogonality fails for characters " + std::to_string(i) + ", " + std::to_string(j));
    }
  }
}

inline CharacterTable table_skeleton(const FqGroup& group) {
  if (group.order() % group.ring().p() == 0) throw Error(ErrorKind::CharacteristicDividesOrder, "p divides |G|");
  CharacterTable t;
  t.group_order = group.order();
  t.exponent = static_cast<int>(group.exponent());
  t.classes = conjugacy_classes(group);
  for (std::size_t rep : t.classes.representatives) t.inverse_class.push_back(t.classes.class_of[group.inverse(rep)]);
  std::tie(t.chi_std, t.chi_det) = standard_characters(group, t.classes, t.exponent);
  return t;
}

}  // namespace detail

/// Character table via the Dixon backend regardless of commutativity.
inline CharacterTable character_table_dixon(const FqGroup& group, std::uint64_t aux_bound = kAuxPrimeBound) {
  CharacterTable t = detail::table_skeleton(group);
  t.abelian = group.is_abelian();
  t.characters = detail::dixon_characters(group, t.classes, t.exponent, aux_bound);
  detail::sort_and_validate(t);
  return t;
}

/// Character table; trivial character first, then ordered by degree and
/// lexicographically by value vectors.
inline CharacterTable character_table(const FqGroup& group, std::uint64_t aux_bound = kAuxPrimeBound) {
  if (!group.is_abelian()) return character_table_dixon(group, aux_bound);
  CharacterTable t = detail::table_skeleton(group);
  t.abelian = true;
  for (const auto& w : detail::abelian_weights(group, t.exponent)) {
    ClassFunction chi;
    for (std::size_t rep : t.classes.representatives) chi.push_back(Cyclotomic::root_power(t.exponent, w[rep]));
    t.characters.push_back(std::move(chi));
  }
  detail::sort_and_validate(t);
  return t;
}

/// Multiplicities of every irreducible in W_a (x) W_b.
inline std::vector<std::int64_t> tensor_multiplicities(const CharacterTable& table, std::size_t a, std::size_t b) {
  return table.decompose(table.product(table.characters.at(a), table.characters.at(b)));
}

/// Image of a character value in F_q under zeta_e -> the fixed primitive e-th root.
inline FqScalar character_value_in_field(const CharacterTable& table, const FqField& field, std::size_t chi,
                                         std::size_t element_class) {
  const FqScalar zeta = primitive_root_of_unity(field, static_cast<std::uint64_t>(table.exponent));
  return table.characters.at(chi).at(element_class).evaluate(zeta);
}

/// Weight j of a linear character chi of a cyclic group generated by g, i.e.
/// chi(g) = zeta_e^j.
inline int linear_weight(const CharacterTable& table, std::size_t chi, std::size_t generator_class) {
  const auto& v = table.characters.at(chi).at(generator_class);
  for (int j = 0; j < table.exponent; ++j)
    if (v == Cyclotomic::root_power(table.exponent, j)) return j;
  throw Error(ErrorKind::NonLinearCharacter, "character " + std::to_string(chi) + " is not linear");
}

}  // namespace mf
