#include <gtest/gtest.h>

#include "mf/arseq.hpp"
#include "mf/catalog.hpp"

using namespace mf;

namespace {

FqGroup reduced(const CyclotomicMatrixSpec& spec, std::uint64_t p) {
  return reduce_group(lift_group(spec, make_dvr(p, minimal_extension_degree(p, spec.order_hint), 4)));
}

FqGroup trivial_group() {
  FqField k = make_field(5, 1);
  return close_group<FqScalar>(k, {Mat2<FqScalar>::identity(k)});
}

int weight_of(const FqGroup& g, const CharacterTable& t, std::size_t chi) {
  return linear_weight(t, chi, t.classes.class_of[g.generator_indices()[0]]);
}

}  // namespace

TEST(KoszulStrand, CyclicStrandsAreExact) {
  for (int n = 1; n <= 4; ++n) {
    auto g = reduced(cyclic_an_spec(n), 13);
    auto t = character_table(g);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (int d = 0; d <= 12; ++d) {
        auto s = koszul_strand(g, t, i, d);
        EXPECT_TRUE(s.complex_holds);
        EXPECT_EQ(s.right_cokernel(), (i == 0 && d == 0) ? 1u : 0u) << n << " " << i << " " << d;
      }
    }
  }
}

TEST(KoszulStrand, NodeDimensionsAddUp) {
  // Euler characteristic of an exact strand: dim L - dim M + dim R - dim P = 0
  auto g = reduced(cyclic_an_spec(3), 7);
  auto t = character_table(g);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (int d = 0; d <= 10; ++d) {
      auto s = koszul_strand(g, t, i, d);
      const auto l = static_cast<long>(s.nodes[0].dim()), m = static_cast<long>(s.nodes[1].dim());
      const auto r = static_cast<long>(s.nodes[2].dim()), p = static_cast<long>(s.nodes[3].dim());
      EXPECT_EQ(l - m + r - p, 0);
      // det is trivial, so the left node is the right node two degrees down
      EXPECT_EQ(s.nodes[0].dim(), d >= 2 ? semi_invariant_basis(g, t, i, d - 2).dim() : 0u);
    }
  }
}

TEST(KoszulStrand, TrivialGroupIsPlainKoszul) {
  auto g = trivial_group();
  auto t = character_table(g);
  ASSERT_EQ(t.size(), 1u);
  for (int d = 0; d <= 8; ++d) {
    auto s = koszul_strand(g, t, 0, d);
    EXPECT_EQ(s.nodes[2].dim(), static_cast<std::size_t>(d) + 1);
    EXPECT_EQ(s.nodes[1].dim(), 2 * static_cast<std::size_t>(d));
    EXPECT_EQ(s.nodes[0].dim(), d >= 1 ? static_cast<std::size_t>(d) - 1 : 0u);
  }
}

TEST(KoszulStrand, RejectsNonAbelian) {
  auto g = reduced(quaternion_spec(), 5);
  auto t = character_table(g);
  try {
    koszul_strand(g, t, 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonAbelianUnsupported);
  }
}

TEST(FixedPoints, IndicatorOfTrivial) {
  auto g3 = reduced(cyclic_an_spec(2), 7);
  EXPECT_EQ(fixed_points_of_projectives(character_table(g3), g3.ring()), (std::vector<int>{1, 0, 0}));
  auto q = reduced(quaternion_spec(), 5);
  EXPECT_EQ(fixed_points_of_projectives(character_table(q), q.ring()), (std::vector<int>{1, 0, 0, 0, 0}));
  auto triv = trivial_group();
  EXPECT_EQ(fixed_points_of_projectives(character_table(triv), triv.ring()), (std::vector<int>{1}));
}

TEST(MiddleTerm, CyclicNeighbours) {
  for (int n = 1; n <= 6; ++n) {
    auto g = reduced(cyclic_an_spec(n), 29);
    auto t = character_table(g);
    const int order = n + 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto mult = middle_term_decomposition(t, i);
      const int w = weight_of(g, t, i);
      for (std::size_t j = 0; j < t.size(); ++j) {
        const int wj = weight_of(g, t, j);
        const int expected = (wj == (w + 1) % order ? 1 : 0) + (wj == (w + order - 1) % order ? 1 : 0);
        EXPECT_EQ(mult[j], expected) << n << " " << i << " " << j;
      }
      check_middle_term_graded(g, t, i, 12);
    }
  }
}

TEST(MiddleTerm, QuaternionAndTrivial) {
  auto q = character_table(reduced(quaternion_spec(), 13));
  EXPECT_EQ(middle_term_decomposition(q, 4), (std::vector<std::int64_t>{1, 1, 1, 1, 0}));
  for (std::size_t i = 0; i < 4; ++i) {
    auto mult = middle_term_decomposition(q, i);
    EXPECT_EQ(mult, (std::vector<std::int64_t>{0, 0, 0, 0, 1}));
  }
  auto triv = trivial_group();
  auto t = character_table(triv);
  EXPECT_EQ(middle_term_decomposition(t, 0), (std::vector<std::int64_t>{2}));
  check_middle_term_graded(triv, t, 0, 8);
}

TEST(Tau, SpecialLinearFixesEverything) {
  for (int n = 1; n <= 5; ++n) {
    auto v = tau_is_det_twist(character_table(reduced(cyclic_an_spec(n), 11)));
    EXPECT_TRUE(v.fixes_every_index());
    EXPECT_EQ(v.det_index, 0u);
    EXPECT_EQ(v.description(), "tau fixes every index");
  }
  EXPECT_TRUE(tau_is_det_twist(character_table(reduced(quaternion_spec(), 5))).fixes_every_index());
  EXPECT_TRUE(tau_is_det_twist(character_table(trivial_group())).fixes_every_index());
}

TEST(Tau, ReflectionGroupShiftsByDetWeight) {
  auto g = reduced(reflection_spec(3), 7);
  auto t = character_table(g);
  auto v = tau_is_det_twist(t);
  EXPECT_FALSE(v.fixes_every_index());
  EXPECT_EQ(weight_of(g, t, v.det_index), 1);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(weight_of(g, t, v.index_map[i]), (weight_of(g, t, i) + 1) % 3);
}

TEST(Tau, LeftNodeIsDetTwist) {
  // (S_{d-2} (x) /\^2 E (x) P_i)^G has the dimension of the tau(L_i) piece
  auto g = reduced(reflection_spec(3), 7);
  auto t = character_table(g);
  auto v = tau_is_det_twist(t);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int d = 2; d <= 9; ++d)
      EXPECT_EQ(build_koszul_strand(g, t, i, d).nodes[0].dim(), semi_invariant_basis(g, t, v.index_map[i], d - 2).dim());
}

TEST(Counting, StrandsMatchMcKayVertices) {
  for (int n = 1; n <= 6; ++n) {
    auto t = character_table(reduced(cyclic_an_spec(n), 29));
    EXPECT_EQ(mckay_graph(t).vertex_count(), t.size());
    EXPECT_EQ(t.size(), static_cast<std::size_t>(n + 1));
  }
}
