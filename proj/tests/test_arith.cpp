#include <gtest/gtest.h>

#include <random>

#include "mf/arith.hpp"

using namespace mf;

namespace {

// Brute-force irreducibility: no monic factor of degree 1..m/2.
bool irreducible_by_trial_division(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  const int m = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= m / 2; ++d) {
    const std::uint64_t count = checked_pow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      detail::PolyFp g(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t rest = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (detail::poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::uint64_t int_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(MakeField, PrimeField) {
  FqField f = make_field(5, 1);
  EXPECT_EQ(f.p(), 5u);
  EXPECT_EQ(f.m(), 1);
  EXPECT_EQ(f.residue_order(), 5u);
  EXPECT_EQ(f.from_int(7), f.from_int(2));
}

TEST(MakeField, QuadraticExtensionIsIrreducible) {
  FqField f = make_field(7, 2);
  EXPECT_EQ(f.residue_order(), 49u);
  EXPECT_TRUE(irreducible_by_trial_division(f.modulus_poly(), 7));
  // t^2 + 1 is the first irreducible in the low-degree-first order since -1 is a non-residue mod 7.
  EXPECT_EQ(f.modulus_poly(), (std::vector<std::uint64_t>{1, 0, 1}));
}

TEST(MakeField, RabinAgreesWithTrialDivision) {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (int m = 2; m <= 4; ++m) {
      const std::uint64_t count = checked_pow(p, m);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint64_t> f(static_cast<std::size_t>(m) + 1, 0);
        std::uint64_t rest = idx;
        for (int i = 0; i < m; ++i) {
          f[static_cast<std::size_t>(i)] = rest % p;
          rest /= p;
        }
        f[static_cast<std::size_t>(m)] = 1;
        ASSERT_EQ(is_irreducible_mod_p(f, p), irreducible_by_trial_division(f, p)) << "p=" << p << " idx=" << idx;
      }
    }
  }
}

TEST(MakeField, RejectsComposite) {
  try {
    make_field(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPrimeModulus);
  }
}

TEST(FieldArithmetic, EveryNonzeroElementInvertible) {
  FqField f = make_field(3, 3);
  for (std::uint64_t idx = 1; idx < f.residue_order(); ++idx) {
    FqScalar a = f.from_index(idx);
    EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(RootsOfUnity, OrderFourInF5) {
  FqField f = make_field(5, 1);
  FqScalar z = primitive_root_of_unity(f, 4);
  // Exhaustive order check over F_5^*: elements of order 4 are 2 and 3; the smallest generator is 2.
  std::vector<std::uint64_t> order_four;
  for (std::uint64_t x = 1; x < 5; ++x) {
    if (multiplicative_order(f.from_int(static_cast<std::int64_t>(x))) == 4) order_four.push_back(x);
  }
  EXPECT_EQ(order_four, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(z, f.from_int(2));
  EXPECT_TRUE(primitive_root_of_unity(f, 1).is_one());
}

TEST(RootsOfUnity, Errors) {
  FqField f = make_field(5, 1);
  try {
    primitive_root_of_unity(f, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSuchRoot);
  }
  try {
    primitive_root_of_unity(f, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadOrder);
  }
}

TEST(RootsOfUnity, PrimitiveForEveryDivisor) {
  FqField f = make_field(7, 2);
  for (std::uint64_t n : divisors(48)) {
    FqScalar z = primitive_root_of_unity(f, n);
    EXPECT_TRUE(z.pow(n).is_one());
    for (std::uint64_t d : divisors(n)) {
      if (d < n) EXPECT_FALSE(z.pow(d).is_one()) << n << " " << d;
    }
  }
}

TEST(Hensel, LiftOfTwoModFiveToPrecisionSix) {
  DvrRing v = make_dvr(5, 1, 6);
  FqField k = residue_field(v);
  DvrScalar theta = hensel_lift_root(v, 4, k.from_int(2));
  // Value fixed by exhaustive search over Z/5^6: the only x = 2 mod 5 with x^4 = 1.
  EXPECT_EQ(theta, v.from_int(14557));
  EXPECT_EQ(reduce_scalar(theta), primitive_root_of_unity(k, 4));
}

TEST(Hensel, UniqueLiftByExhaustiveSearch) {
  for (auto [p, N] : {std::pair<std::uint64_t, int>{5, 6}, {7, 7}}) {
    DvrRing v = make_dvr(p, 1, N);
    FqField k = residue_field(v);
    const std::uint64_t pn = int_pow(p, static_cast<std::uint64_t>(N));
    for (std::uint64_t n : divisors(p - 1)) {
      FqScalar z = primitive_root_of_unity(k, n);
      DvrScalar theta = hensel_lift_root(v, n, z);
      std::vector<std::uint64_t> found;
      for (std::uint64_t x = z.coeff(0); x < pn; x += p) {
        if (pow_mod(x, n, pn) == 1) found.push_back(x);
      }
      ASSERT_EQ(found.size(), 1u);
      EXPECT_EQ(theta.coeff(0), found[0]);
    }
  }
}

TEST(Hensel, TrivialAndErrors) {
  DvrRing v = make_dvr(5, 1, 4);
  FqField k = residue_field(v);
  EXPECT_TRUE(hensel_lift_root(v, 1, k.one()).is_one());
  try {
    hensel_lift_root(v, 5, k.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadOrder);
  }
  try {
    hensel_lift_root(v, 2, k.from_int(2));  // 2^2 = 4 != 1 mod 5
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotARoot);
  }
}

TEST(Hensel, ExtensionRing) {
  DvrRing v = make_dvr(7, 2, 8);
  FqField k = residue_field(v);
  for (std::uint64_t n : {3u, 4u, 8u, 16u, 48u}) {
    FqScalar z = primitive_root_of_unity(k, n);
    DvrScalar theta = hensel_lift_root(v, n, z);
    EXPECT_TRUE(theta.pow(n).is_one());
    EXPECT_EQ(reduce_scalar(theta), z);
  }
}

TEST(ReduceScalar, IntegerReduction) {
  DvrRing v = make_dvr(5, 1, 3);
  EXPECT_EQ(reduce_scalar(v.from_int(7)), residue_field(v).from_int(2));
}

TEST(ReduceScalar, HomomorphismProperty) {
  std::mt19937_64 rng(12345);
  for (auto [p, m, N] : {std::tuple<std::uint64_t, int, int>{5, 1, 6}, {7, 2, 8}, {3, 3, 5}}) {
    DvrRing v = make_dvr(p, m, N);
    std::uniform_int_distribution<std::uint64_t> dist(0, v.modulus_pow() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::uint64_t> ca, cb;
      for (int i = 0; i < m; ++i) {
        ca.push_back(dist(rng));
        cb.push_back(dist(rng));
      }
      DvrScalar a = v.from_coeffs(ca), b = v.from_coeffs(cb);
      EXPECT_EQ(reduce_scalar(a + b), reduce_scalar(a) + reduce_scalar(b));
      EXPECT_EQ(reduce_scalar(a * b), reduce_scalar(a) * reduce_scalar(b));
      EXPECT_EQ(a.is_unit(), !reduce_scalar(a).is_zero());
      if (a.is_unit()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
      } else {
        EXPECT_THROW(a.inverse(), Error);
      }
    }
  }
}
