#pragma once

// Graded invariant theory of G acting on k[x1, x2]: the Reynolds operator,
// degreewise invariant and semi-invariant bases, and the checks behind the
// Klein A_n presentation (generation, the hypersurface relation, ideal
// containments in the quotient, and the l0 bound).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mf/characters.hpp"
#include "mf/groups.hpp"
#include "mf/linalg.hpp"
#include "mf/poly.hpp"

namespace mf {

inline constexpr int kDefaultDegreeCap = 16;

template <class S>
struct GradedSubspaceBasis {
  int degree = 0;
  std::vector<GradedPoly<S>> basis;  // reduced echelon w.r.t. graded-lex

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

template <class S>
S group_order_inverse(const MatrixGroup<S>& group) {
  const auto n = static_cast<std::int64_t>(group.order());
  const S order = group.ring().from_int(n);
  if (!order.is_unit()) throw Error(ErrorKind::CharacteristicDividesOrder, "|G| is not invertible");
  return order.inverse();
}

inline GradedSubspaceBasis<FqScalar> basis_from_rows(const FqField& k, int d, const std::vector<Row<FqScalar>>& rows) {
  GradedSubspaceBasis<FqScalar> out;
  out.degree = d;
  for (const auto& r : rows) out.basis.push_back(GradedPoly<FqScalar>::from_coordinates(k, d, d, r));
  return out;
}

/// Common eigenspace {f in S_d : act(g_t) f = lambda_t f} over the generators g_t.
inline std::vector<Row<FqScalar>> generator_eigenspace(const FqGroup& group, int d, const std::vector<FqScalar>& lambdas) {
  const FqField k = group.ring();
  const std::size_t dim = static_cast<std::size_t>(d) + 1;
  std::vector<Row<FqScalar>> stacked;
  const auto& gens = group.generator_indices();
  for (std::size_t t = 0; t < gens.size(); ++t) {
    auto m = action_matrix(group.element(gens[t]), d);
    for (std::size_t r = 0; r < dim; ++r) m[r][r] -= lambdas[t];
    for (auto& row : m) stacked.push_back(std::move(row));
  }
  if (stacked.empty()) {
    std::vector<Row<FqScalar>> all;
    for (std::size_t i = 0; i < dim; ++i) {
      Row<FqScalar> v(dim, k.zero());
      v[i] = k.one();
      all.push_back(std::move(v));
    }
    return all;
  }
  return kernel(stacked, dim, k.zero());
}

}  // namespace detail

/// rho(f) = (1/|G|) sum_g act(g, f).
template <class S>
GradedPoly<S> reynolds(const MatrixGroup<S>& group, const GradedPoly<S>& f) {
  const S inv = detail::group_order_inverse(group);
  GradedPoly<S> acc(f.ring(), f.nvars(), f.cap());
  for (const auto& g : group.elements()) acc += act(g, f);
  return inv * acc;
}

/// Rank of the Reynolds projector on S_d.
inline std::size_t reynolds_rank(const FqGroup& group, int d) {
  const FqField k = group.ring();
  std::vector<Row<FqScalar>> images;
  for (const auto& e : monomials2(d)) images.push_back(reynolds(group, GradedPoly<FqScalar>::monomial(k, 2, d, e, k.one())).coordinates(d));
  return rank_of(std::move(images));
}

/// Fixed subspace of S_d as the joint kernel of act(g) - 1 over the generators,
/// cross-checked against the Reynolds rank.
inline GradedSubspaceBasis<FqScalar> invariant_basis(const FqGroup& group, int d) {
  detail::group_order_inverse(group);
  const FqField k = group.ring();
  std::vector<FqScalar> ones(group.generator_indices().size(), k.one());
  auto rows = detail::generator_eigenspace(group, d, ones);
  const std::size_t rk = reynolds_rank(group, d);
  if (rk != rows.size()) {
    throw Error(ErrorKind::MismatchDetected, "degree " + std::to_string(d) + ": kernel dimension " + std::to_string(rows.size()) +
                                                 " but Reynolds rank " + std::to_string(rk));
  }
  return detail::basis_from_rows(k, d, rows);
}

/// {f in S_d : act(g, f) = chi(g)^{-1} f}, i.e. the degree-d part of (S (x) P_chi)^G.
inline GradedSubspaceBasis<FqScalar> semi_invariant_basis(const FqGroup& group, const CharacterTable& table, std::size_t chi,
                                                          int d) {
  detail::group_order_inverse(group);
  if (table.dims.at(chi) != 1)
    throw Error(ErrorKind::NonLinearCharacter, "character " + std::to_string(chi) + " has degree " + std::to_string(table.dims[chi]));
  const FqField k = group.ring();
  std::vector<FqScalar> lambdas;
  for (std::size_t g : group.generator_indices()) {
    lambdas.push_back(character_value_in_field(table, k, chi, table.classes.class_of[g]).inverse());
  }
  return detail::basis_from_rows(k, d, detail::generator_eigenspace(group, d, lambdas));
}

// ---------------------------------------------------------------------------
// Generation of the invariant ring

struct GenerationReport {
  std::vector<std::size_t> invariant_dims;  // indexed by degree 0..D
  std::vector<std::size_t> generated_dims;
  std::optional<int> first_gap;

  bool passed() const { return !first_gap.has_value(); }
};

/// Span of all products of the (homogeneous) generators that land in degree d.
template <class S>
std::vector<GradedPoly<S>> generator_products(const std::vector<GradedPoly<S>>& generators, int d) {
  std::vector<int> degs;
  for (const auto& g : generators) {
    const int gd = g.homogeneous_degree();
    if (gd <= 0) throw Error(ErrorKind::ValidationError, "generators must be homogeneous of positive degree");
    degs.push_back(gd);
  }
  std::vector<GradedPoly<S>> out;
  if (d == 0 || generators.empty()) return out;
  const auto ring = generators.front().ring();
  std::function<void(std::size_t, int, GradedPoly<S>)> rec = [&](std::size_t i, int remaining, GradedPoly<S> acc) {
    if (i == generators.size()) {
      if (remaining == 0) out.push_back(std::move(acc));
      return;
    }
    GradedPoly<S> cur = acc;
    for (int used = 0; used * degs[i] <= remaining; ++used) {
      rec(i + 1, remaining - used * degs[i], cur);
      cur = cur * generators[i].with_cap(d);
    }
  };
  rec(0, d, GradedPoly<S>::constant(ring, 2, d, ring.one()));
  return out;
}

inline GenerationReport generation_report(const FqGroup& group, const std::vector<GradedPoly<FqScalar>>& generators, int cap) {
  GenerationReport report;
  for (int d = 0; d <= cap; ++d) {
    const std::size_t inv = invariant_basis(group, d).dim();
    std::size_t gen = 1;  // constants
    if (d > 0) {
      std::vector<Row<FqScalar>> rows;
      for (const auto& f : generator_products(generators, d)) rows.push_back(f.coordinates(d));
      gen = rank_of(std::move(rows));
    }
    report.invariant_dims.push_back(inv);
    report.generated_dims.push_back(gen);
    if (gen != inv && !report.first_gap) report.first_gap = d;
  }
  return report;
}

/// Throws GenerationGap at the first degree where the generated subalgebra is
/// smaller than the invariant ring.
inline GenerationReport check_generation(const FqGroup& group, const std::vector<GradedPoly<FqScalar>>& generators, int cap) {
  GenerationReport report = generation_report(group, generators, cap);
  if (report.first_gap) {
    throw Error(ErrorKind::GenerationGap, "generated subalgebra misses invariants in degree " + std::to_string(*report.first_gap),
                std::to_string(*report.first_gap));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Klein A_n: S^G = V[[v1, v2, v3]] and the hypersurface x^2 + y^{n+1} + z^2

template <class S>
struct KleinGenerators {
  GradedPoly<S> v1, v2, v3;  // x1 x2, x1^{n+1}, x2^{n+1}
};

template <class Ring>
KleinGenerators<typename Ring::scalar_type> klein_generators(const Ring& ring, int n, int cap) {
  using S = typename Ring::scalar_type;
  const S one = ring.one();
  return {GradedPoly<S>::monomial(ring, 2, cap, {1, 1, 0}, one), GradedPoly<S>::monomial(ring, 2, cap, {n + 1, 0, 0}, one),
          GradedPoly<S>::monomial(ring, 2, cap, {0, n + 1, 0}, one)};
}

inline GradedPoly<FqScalar> reduce_poly(const GradedPoly<DvrScalar>& f) {
  GradedPoly<FqScalar> out(residue_field(f.ring()), f.nvars(), f.cap());
  for (const auto& [e, c] : f.terms()) out.add_term(e, reduce_scalar(c));
  return out;
}

struct Relation {
  std::string name;
  GradedPoly<DvrScalar> residual;
  bool holds_mod_p = false;

  bool holds() const { return residual.is_zero(); }
};

struct InvariantPresentation {
  int n = 1;
  int degree_cap = 0;
  DvrScalar theta4, theta_2n2;
  std::vector<std::pair<std::string, GradedPoly<DvrScalar>>> generators;  // v1 v2 v3 alpha beta gamma
  std::vector<Relation> relations;

  const GradedPoly<DvrScalar>& generator(const std::string& name) const {
    for (const auto& [nm, f] : generators)
      if (nm == name) return f;
    throw Error(ErrorKind::NotFound, "no generator named " + name);
  }
};

/// beta = theta_{2(n+1)} v1, alpha +- theta_4 gamma = v2, v3; verifies
/// v1^{n+1} = v2 v3 and alpha^2 + beta^{n+1} + gamma^2 = 0 exactly over V_N.
inline InvariantPresentation klein_presentation(int n, const DvrRing& ring, int cap = 0,
                                                std::optional<DvrScalar> theta4_override = std::nullopt) {
  if (n < 1) throw Error(ErrorKind::ValidationError, "n must be >= 1");
  if (ring.p() == 2) throw Error(ErrorKind::BadOrder, "p = 2 is excluded");
  if (cap <= 0) cap = 4 * (n + 1);
  const FqField k = residue_field(ring);
  const auto order = static_cast<std::uint64_t>(2 * (n + 1));
  InvariantPresentation out;
  out.n = n;
  out.degree_cap = cap;
  out.theta4 = theta4_override ? *theta4_override : hensel_lift_root(ring, 4, primitive_root_of_unity(k, 4));
  out.theta_2n2 = hensel_lift_root(ring, order, primitive_root_of_unity(k, order));

  const auto v = klein_generators(ring, n, cap);
  const DvrScalar half = ring.from_int(2).inverse();
  const GradedPoly<DvrScalar> beta = out.theta_2n2 * v.v1;
  const GradedPoly<DvrScalar> alpha = half * (v.v2 + v.v3);
  const GradedPoly<DvrScalar> gamma = (half * out.theta4.inverse()) * (v.v2 - v.v3);
  out.generators = {{"v1", v.v1}, {"v2", v.v2}, {"v3", v.v3}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};

  const std::string np1 = std::to_string(n + 1);
  out.relations.push_back({"v1^" + np1 + " - v2*v3", v.v1.pow(n + 1) - v.v2 * v.v3});
  out.relations.push_back({"alpha^2 + beta^" + np1 + " + gamma^2", alpha * alpha + beta.pow(n + 1) + gamma * gamma});
  for (auto& rel : out.relations) {
    rel.holds_mod_p = reduce_poly(rel.residual).is_zero();
    if (!rel.holds()) {
      throw Error(ErrorKind::RelationFailure, "relation " + rel.name + " has nonzero residual",
                  rel.residual.to_string());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ideal membership in k[x, y, z]/(x^2 + y^{n+1} + z^2), weighted grading
// deg x = deg z = n + 1, deg y = 2.

enum class MonomialOrder { Lex, ReverseLex };

inline int weighted_degree(int n, const Exponent& e) { return (n + 1) * (e[0] + e[2]) + 2 * e[1]; }

/// All monomials of weighted degree w; normal ones have y-exponent <= n.
inline std::vector<Exponent> weighted_monomials(int n, int w, bool normal_only) {
  std::vector<Exponent> out;
  for (int a = 0; (n + 1) * a <= w; ++a) {
    for (int c = 0; (n + 1) * (a + c) <= w; ++c) {
      const int rest = w - (n + 1) * (a + c);
      if (rest % 2 != 0) continue;
      const int b = rest / 2;
      if (normal_only && b > n) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

using SparsePoly = std::map<Exponent, FqScalar>;

/// Rewrites y^{n+1} -> -(x^2 + z^2), highest y-power first.
inline SparsePoly normal_form(int n, SparsePoly f) {
  while (true) {
    Exponent worst{-1, -1, -1};
    for (const auto& [e, c] : f)
      if (!c.is_zero() && e[1] > n && e[1] > worst[1]) worst = e;
    if (worst[1] < 0) break;
    const FqScalar c = f[worst];
    f.erase(worst);
    const Exponent base{worst[0], worst[1] - (n + 1), worst[2]};
    for (const Exponent& shift : {Exponent{2, 0, 0}, Exponent{0, 0, 2}}) {
      const Exponent target{base[0] + shift[0], base[1], base[2] + shift[2]};
      auto& slot = f.try_emplace(target, c.ring().zero()).first->second;
      slot -= c;
      if (slot.is_zero()) f.erase(target);
    }
  }
  return f;
}

struct ContainmentResult {
  bool contained = true;
  std::optional<Exponent> witness;
  std::size_t generators_checked = 0;

  std::string witness_string() const { return witness ? monomial_string(*witness, {"x", "y", "z"}) : ""; }
};

/// Decides whether every generator of (x, y, z)^source_power lies in the ideal
/// generated by the `target` monomials in the quotient ring; the first
/// non-member (by weighted degree, then higher y-power) is the witness.
inline ContainmentResult ideal_containment(int n, const FqField& k, int source_power, const std::vector<Exponent>& target,
                                           MonomialOrder order = MonomialOrder::Lex) {
  std::vector<Exponent> sources;
  for (int a = 0; a <= source_power; ++a)
    for (int b = 0; a + b <= source_power; ++b) sources.push_back({a, b, source_power - a - b});
  std::sort(sources.begin(), sources.end(), [&](const Exponent& l, const Exponent& r) {
    const int wl = weighted_degree(n, l), wr = weighted_degree(n, r);
    if (wl != wr) return wl < wr;
    if (l[1] != r[1]) return l[1] > r[1];
    return l > r;
  });

  std::map<int, Echelon<FqScalar>> ideal_by_degree;
  std::map<int, std::vector<Exponent>> columns_by_degree;
  auto columns = [&](int w) -> const std::vector<Exponent>& {
    auto it = columns_by_degree.find(w);
    if (it != columns_by_degree.end()) return it->second;
    auto cols = weighted_monomials(n, w, true);
    if (order == MonomialOrder::ReverseLex) std::reverse(cols.begin(), cols.end());
    return columns_by_degree.emplace(w, std::move(cols)).first->second;
  };
  auto to_row = [&](int w, const SparsePoly& f) {
    const auto& cols = columns(w);
    Row<FqScalar> row(cols.size(), k.zero());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      auto it = f.find(cols[i]);
      if (it != f.end()) row[i] = it->second;
    }
    return row;
  };
  auto ideal = [&](int w) -> const Echelon<FqScalar>& {
    auto it = ideal_by_degree.find(w);
    if (it != ideal_by_degree.end()) return it->second;
    std::vector<Row<FqScalar>> rows;
    for (const auto& t : target) {
      const int rest = w - weighted_degree(n, t);
      if (rest < 0) continue;
      for (const auto& m : weighted_monomials(n, rest, true)) {
        SparsePoly prod{{Exponent{t[0] + m[0], t[1] + m[1], t[2] + m[2]}, k.one()}};
        rows.push_back(to_row(w, normal_form(n, std::move(prod))));
      }
    }
    if (rows.empty()) rows.push_back(Row<FqScalar>(columns(w).size(), k.zero()));
    return ideal_by_degree.emplace(w, row_reduce(std::move(rows))).first->second;
  };

  ContainmentResult result;
  for (const auto& s : sources) {
    ++result.generators_checked;
    const int w = weighted_degree(n, s);
    const Row<FqScalar> row = to_row(w, normal_form(n, SparsePoly{{s, k.one()}}));
    if (!ideal(w).contains(row)) {
      result.contained = false;
      result.witness = s;
      return result;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// l0(G; u1, u2): smallest l with (x1, x2)^l cap A^G inside (u1^2, u2^2) A^G

struct L0Result {
  int l0 = 0;
  int degree_cap = 0;
  std::vector<int> failing_degrees;  // degrees d <= cap where A^G_d is not in the ideal
  bool stable = false;               // same answer at cap + 2
};

namespace detail {

inline std::vector<Row<FqScalar>> invariant_rows(const FqGroup& group, int d) {
  std::vector<Row<FqScalar>> rows;
  for (const auto& f : invariant_basis(group, d).basis) rows.push_back(f.coordinates(d));
  return rows;
}

/// dim of (sum_i multipliers[i] * A^G) in degree d, and dim A^G_d.
inline std::pair<std::size_t, std::size_t> ideal_vs_invariants(const FqGroup& group,
                                                                const std::vector<GradedPoly<FqScalar>>& multipliers, int d) {
  std::vector<Row<FqScalar>> rows;
  for (const auto& u : multipliers) {
    const int rest = d - u.homogeneous_degree();
    if (rest < 0) continue;
    for (const auto& b : invariant_basis(group, rest).basis) rows.push_back((u.with_cap(d) * b.with_cap(d)).coordinates(d));
  }
  return {rank_of(std::move(rows)), invariant_basis(group, d).dim()};
}

inline void require_homogeneous_invariant(const FqGroup& group, const GradedPoly<FqScalar>& u) {
  const int d = u.homogeneous_degree();
  if (d <= 0) throw Error(ErrorKind::ValidationError, "parameters must be homogeneous of positive degree");
  for (const auto& g : group.elements()) {
    if (!(act(g, u) == u)) throw Error(ErrorKind::ValidationError, "parameter is not invariant", u.to_string());
  }
}

}  // namespace detail

/// A^G/(u1, u2) vanishes in the top 2*max(deg u) degrees up to the cap.
inline bool is_system_of_parameters(const FqGroup& group, const GradedPoly<FqScalar>& u1, const GradedPoly<FqScalar>& u2,
                                    int cap) {
  const int window = 2 * std::max(u1.homogeneous_degree(), u2.homogeneous_degree());
  for (int d = std::max(0, cap - window + 1); d <= cap; ++d) {
    auto [ideal_dim, inv_dim] = detail::ideal_vs_invariants(group, {u1, u2}, d);
    if (ideal_dim != inv_dim) return false;
  }
  return true;
}

inline L0Result compute_l0(const FqGroup& group, const GradedPoly<FqScalar>& u1, const GradedPoly<FqScalar>& u2, int l_max,
                           int cap = 0) {
  detail::require_homogeneous_invariant(group, u1);
  detail::require_homogeneous_invariant(group, u2);
  const int max_deg = std::max(u1.homogeneous_degree(), u2.homogeneous_degree());
  const int min_cap = l_max + 2 * max_deg;
  if (cap <= 0) cap = min_cap;
  if (cap < min_cap) throw Error(ErrorKind::ValidationError, "degree cap must be >= l_max + 2 max deg u_i");
  if (!is_system_of_parameters(group, u1, u2, cap)) throw Error(ErrorKind::NotAnSOP, "A^G/(u1, u2) is not finite-dimensional up to the cap");

  const std::vector<GradedPoly<FqScalar>> squares{u1 * u1, u2 * u2};
  auto run = [&](int c) {
    L0Result r;
    r.degree_cap = c;
    for (int d = 0; d <= c; ++d) {
      std::vector<GradedPoly<FqScalar>> sq;
      for (const auto& s : squares) sq.push_back(s.with_cap(c));
      auto [ideal_dim, inv_dim] = detail::ideal_vs_invariants(group, sq, d);
      if (ideal_dim != inv_dim) r.failing_degrees.push_back(d);
    }
    r.l0 = r.failing_degrees.empty() ? 0 : r.failing_degrees.back() + 1;
    return r;
  };
  L0Result result = run(cap);
  const L0Result wider = run(cap + 2);
  result.stable = wider.l0 == result.l0;
  if (!result.stable) throw Error(ErrorKind::MismatchDetected, "l0 changes when the degree cap is raised");
  if (result.l0 > l_max) throw Error(ErrorKind::NotFound, "no l <= " + std::to_string(l_max) + " works", std::to_string(result.l0));
  return result;
}

}  // namespace mf
