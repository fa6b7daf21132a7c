// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mf/arseq.hpp"
#include "mf/catalog.hpp"
#include "mf/invariants.hpp"
#include "mf/mckay.hpp"
#include "support/dynkin.hpp"

using namespace mf;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

DvrGroup lifted(const CyclotomicMatrixSpec& spec, std::uint64_t p, int N) {
  return lift_group(spec, make_dvr(p, minimal_extension_degree(p, spec.order_hint), N));
}

std::uint64_t klein_degree(int n, std::uint64_t p) {
  return static_cast<std::uint64_t>(minimal_extension_degree(p, std::lcm<std::uint64_t>(4, 2 * static_cast<std::uint64_t>(n + 1))));
}

std::size_t weight_count(int n, int d) {
  std::size_t c = 0;
  for (int a = 0; a <= d; ++a)
    if ((a - (d - a)) % (n + 1) == 0) ++c;
  return c;
}

// Counts roots of x^n = 1 in V_N reducing to zeta, extending one p-adic digit at a time.
// At level k every residue mod p^k above a surviving root mod p^{k-1} is tried, so the
// count is exact without enumerating all of V_N.
std::size_t lifts_above(const DvrRing& v, std::uint64_t n, const FqScalar& zeta) {
  const std::uint64_t p = v.p();
  const auto m = static_cast<std::size_t>(v.m());
  const auto vanishes_mod = [&](const DvrScalar& x, std::uint64_t pk) {
    const DvrScalar r = x.pow(n) - v.one();
    for (auto c : r.coeffs())
      if (c % pk != 0) return false;
    return true;
  };
  std::vector<DvrScalar> level{lift_scalar(v, zeta)};
  std::uint64_t pk = p;
  for (int k = 2; k <= v.N(); ++k) {
    const std::uint64_t prev = pk;
    pk *= p;
    std::vector<DvrScalar> next;
    std::vector<std::uint64_t> digits(m, 0);
    for (const auto& x : level) {
      for (std::uint64_t code = 0; code < checked_pow(p, static_cast<int>(m)); ++code) {
        std::uint64_t c = code;
        for (auto& d : digits) {
          d = (c % p) * prev;
          c /= p;
        }
        const DvrScalar y = x + v.from_coeffs(digits);
        if (vanishes_mod(y, pk)) next.push_back(y);
      }
    }
    level = std::move(next);
    if (level.size() != 1) return level.size();
  }
  return level.size();
}

// -- criteria ---------------------------------------------------------------

void hensel() {
  for (auto [p, N] : std::vector<std::pair<std::uint64_t, int>>{{5, 6}, {7, 8}}) {
    for (std::uint64_t n : {2u, 3u, 4u, 6u}) {
      if (n % p == 0) continue;
      const int m = minimal_extension_degree(p, n);
      const DvrRing v = make_dvr(p, m, N);
      const FqField k = residue_field(v);
      const FqScalar zeta = primitive_root_of_unity(k, n);
      const DvrScalar theta = hensel_lift_root(v, n, zeta);
      require(theta.pow(n).is_one(), "theta^n != 1");
      require(reduce_scalar(theta) == zeta && multiplicative_order(zeta) == n, "wrong reduction or order");
      require(lifts_above(v, n, zeta) == 1, "root over zeta is not unique");
      if (m == 1 && checked_pow(p, N) <= 1'000'000) {
        // every element of Z/p^N: exactly n roots of x^n = 1, one above each root mod p
        const std::uint64_t size = checked_pow(p, N);
        std::size_t roots = 0, above_zeta = 0;
        for (std::uint64_t a = 0; a < size; ++a) {
          const std::array<std::uint64_t, 1> c{a};
          const DvrScalar x = v.from_coeffs(c);
          if (!x.pow(n).is_one()) continue;
          ++roots;
          if (reduce_scalar(x) == zeta) ++above_zeta;
        }
        require(roots == n && above_zeta == 1, "exhaustive root count in Z/p^N");
      }
    }
  }
}

bool within_one_second(std::chrono::steady_clock::time_point start) {
  return std::chrono::steady_clock::now() - start < std::chrono::seconds(1);
}

void injectivity() {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
      if (static_cast<std::uint64_t>(n + 1) % p == 0) continue;
      const auto start = std::chrono::steady_clock::now();
      const auto g = lifted(cyclic_an_spec(static_cast<std::uint64_t>(n)), p, 8);
      const bool same = reduce_group(g).order() == g.order() && g.order() == static_cast<std::size_t>(n + 1);
      require(same, "A_n order changed at p=" + std::to_string(p));
      require(within_one_second(start), "A_n took over 1 s");
    }
  }
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto start = std::chrono::steady_clock::now();
    const auto g = lifted(quaternion_spec(), p, 8);
    require(reduce_group(g).order() == 8 && g.order() == 8, "Q8 order changed at p=" + std::to_string(p));
    require(within_one_second(start), "Q8 took over 1 s");
  }
}

void pseudo_reflection_free() {
  for (int n = 1; n <= 6; ++n) {
    const auto g = reduce_group(lifted(cyclic_an_spec(static_cast<std::uint64_t>(n)), 29, 4));
    require(pseudo_reflections(g).empty(), "A_n has a pseudo-reflection");
  }
  require(pseudo_reflections(reduce_group(lifted(reflection_spec(3), 7, 4))).size() == 2, "diag(z3, 1) should give 2");
}

void mckay_graphs() {
  for (int n = 1; n <= 6; ++n) {
    const auto cert = quiver_equals_mckay(lifted(cyclic_an_spec(static_cast<std::uint64_t>(n)), 29, 6));
    require(cert.certificate, "certificate false");
    require(cert.graph.dimension_count_holds(), "column dimension count");
    require(dynkin::isomorphic(cert.graph.arrows, dynkin::affine_a(n)), "not affine A_" + std::to_string(n));
  }
  const auto q = quiver_equals_mckay(lifted(quaternion_spec(), 5, 6));
  require(q.certificate && q.graph.dimension_count_holds(), "Q8 certificate");
  require(dynkin::isomorphic(q.graph.arrows, dynkin::affine_d4()), "Q8 is not affine D_4");
}

void klein_identities() {
  for (auto [n, p] : std::vector<std::pair<int, std::uint64_t>>{{1, 7}, {2, 5}, {3, 7}}) {
    const DvrRing v = make_dvr(p, static_cast<int>(klein_degree(n, p)), 8);
    const auto pres = klein_presentation(n, v, 4 * (n + 1));
    require(pres.relations.size() == 2, "missing relations");
    for (const auto& r : pres.relations) require(r.holds(), r.name + " has residual " + r.residual.to_string());
  }
}

void generation() {
  for (auto [n, p] : std::vector<std::pair<int, std::uint64_t>>{{1, 7}, {2, 5}, {3, 7}}) {
    const int D = 4 * (n + 1);
    const auto g = reduce_group(lift_group(cyclic_an_spec(static_cast<std::uint64_t>(n)),
                                           make_dvr(p, static_cast<int>(klein_degree(n, p)), 8)));
    const auto v = klein_generators(g.ring(), n, D);
    require(check_generation(g, {v.v1, v.v2, v.v3}, D).passed(), "generation fails");
    std::string witness;
    try {
      check_generation(g, {v.v1, v.v2}, D);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::GenerationGap) witness = e.witness();
    }
    require(witness == std::to_string(n + 1), "dropping v3 should fail at degree n + 1");
  }
}

void containments() {
  const FqField k = make_field(7, 1);
  for (int n = 1; n <= 3; ++n) {
    for (auto order : {MonomialOrder::Lex, MonomialOrder::ReverseLex}) {
      require(ideal_containment(n, k, n + 1, {{1, 0, 0}, {0, 0, 1}}, order).contained, "(x,y,z)^{n+1} in (x,z)");
      require(ideal_containment(n, k, 3 * (n + 1), {{2, 0, 0}, {0, 0, 2}}, order).contained, "(x,y,z)^{3(n+1)} in (x^2,z^2)");
      const auto neg = ideal_containment(n, k, 1, {{2, 0, 0}, {0, 0, 2}}, order);
      require(!neg.contained && neg.witness.has_value(), "negative control");
    }
  }
}

void koszul() {
  for (int n = 1; n <= 4; ++n) {
    const auto g = reduce_group(lifted(cyclic_an_spec(static_cast<std::uint64_t>(n)), 13, 4));
    const auto t = character_table(g);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (int d = 0; d <= 12; ++d) {
        const auto s = build_koszul_strand(g, t, i, d);
        require(s.verified(), "strand (" + std::to_string(i) + ", " + std::to_string(d) + ")");
        require(s.right_cokernel() == ((i == 0 && d == 0) ? 1u : 0u), "cokernel placement");
      }
    }
  }
}

void middle_terms() {
  for (int n = 1; n <= 6; ++n) {
    const auto g = reduce_group(lifted(cyclic_an_spec(static_cast<std::uint64_t>(n)), 29, 4));
    const auto t = character_table(g);
    const auto arrows = mckay_graph(t).arrows;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto mult = middle_term_decomposition(t, i);
      for (std::size_t j = 0; j < t.size(); ++j) require(mult[j] == arrows[j][i], "middle term vs arrows");
      check_middle_term_graded(g, t, i, 12);
    }
  }
  const auto q = character_table(reduce_group(lifted(quaternion_spec(), 5, 4)));
  const auto arrows = mckay_graph(q).arrows;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto mult = middle_term_decomposition(q, i);
    for (std::size_t j = 0; j < q.size(); ++j) require(mult[j] == arrows[j][i], "Q8 middle term vs arrows");
  }
}

void invariant_dimensions() {
  for (int n = 1; n <= 6; ++n) {
    const auto g = reduce_group(lifted(cyclic_an_spec(static_cast<std::uint64_t>(n)), 29, 4));
    for (int d = 0; d <= 16; ++d) {
      const std::size_t dim = invariant_basis(g, d).dim();
      require(dim == weight_count(n, d), "weight count at n=" + std::to_string(n) + " d=" + std::to_string(d));
      require(dim == reynolds_rank(g, d), "Reynolds rank");
    }
  }
}

void l0_stability() {
  constexpr int kPinnedL0 = 7;
  const DvrRing v = make_dvr(7, static_cast<int>(klein_degree(1, 7)), 8);
  const auto g = reduce_group(lift_group(cyclic_an_spec(1), v));
  const auto pres = klein_presentation(1, v);
  const auto alpha = reduce_poly(pres.generator("alpha"));
  const auto gamma = reduce_poly(pres.generator("gamma"));
  const auto r = compute_l0(g, alpha, gamma, 10);
  const auto wider = compute_l0(g, alpha, gamma, 10, r.degree_cap + 2);
  require(r.stable && wider.l0 == r.l0, "l0 moves with the degree cap");
  require(r.l0 == kPinnedL0, "l0 = " + std::to_string(r.l0) + ", expected " + std::to_string(kPinnedL0));
}

struct Criterion {
  int id;
  std::string title;
  double limit_ms;  // 0 = no limit
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Hensel lifting of roots of unity", 1000, hensel},
      {2, "reduction mod p is injective on lifted groups", 0, injectivity},
      {3, "pseudo-reflection detection", 0, pseudo_reflection_free},
      {4, "McKay graphs are affine A_n and D_4", 5000, mckay_graphs},
      {5, "A_n relations exact over Z/p^8", 0, klein_identities},
      {6, "x1x2, x1^{n+1}, x2^{n+1} generate the invariants", 0, generation},
      {7, "ideal containments in the A_n hypersurface", 10000, containments},
      {8, "Koszul strands are exact", 0, koszul},
      {9, "AR middle terms equal McKay arrows", 0, middle_terms},
      {10, "invariant dimensions match the weight count", 0, invariant_dimensions},
      {11, "l0 for A_1 with (alpha, gamma) is stable and pinned", 0, l0_stability},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_ms > 0 && ms > c.limit_ms) {
      ok = false;
      detail = "took longer than " + std::to_string(static_cast<int>(c.limit_ms)) + " ms";
    }
    std::printf("%s %2d  %-52s %9.1f ms%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), ms, detail.empty() ? "" : "  ",
                detail.c_str());
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
