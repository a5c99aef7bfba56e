#include <gtest/gtest.h>

#include "adcat/linalg.hpp"
#include "adcat/sampling.hpp"
#include "support.hpp"

using namespace adcat;
using adcat::testing::brute_force_solvable;
using adcat::testing::for_each_matrix;

namespace {

const Ring ZZ = Ring::integers();
const Ring QQ = Ring::rationals();

Mat ints(const Ring& r, std::vector<std::vector<long long>> rows) { return Mat::from_ints(r, rows); }

}  // namespace

TEST(SolveLinear, IdentityScaling) {
  auto x = solve_linear(ints(ZZ, {{2}}), ints(ZZ, {{2}}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, ints(ZZ, {{1}}));
}

TEST(SolveLinear, TwoXEqualsOneHasNoIntegerSolution) {
  EXPECT_FALSE(solve_linear(ints(ZZ, {{2}}), ints(ZZ, {{1}})));
}

TEST(SolveLinear, FieldDivision) {
  auto x = solve_linear(ints(QQ, {{2}}), ints(QQ, {{1}}));
  ASSERT_TRUE(x);
  EXPECT_TRUE(QQ.equal((*x)(0, 0), Elem{mpq_class(1, 2)}));
}

TEST(SolveLinear, DimensionAndRingChecks) {
  EXPECT_THROW(solve_linear(ints(ZZ, {{1, 2}}), ints(ZZ, {{1}, {2}})), DimensionMismatch);
  EXPECT_THROW(solve_linear(ints(ZZ, {{1}}), ints(QQ, {{1}})), RingMismatch);
}

TEST(SolveLinear, EmptySystems) {
  auto x = solve_linear(Mat(ZZ, 2, 0), Mat(ZZ, 2, 1));
  ASSERT_TRUE(x);
  EXPECT_EQ(x->rows(), 0u);
  EXPECT_FALSE(solve_linear(Mat(ZZ, 1, 0), ints(ZZ, {{1}})));
  auto y = solve_linear(Mat(ZZ, 0, 3), Mat(ZZ, 0, 2));
  ASSERT_TRUE(y);
  EXPECT_EQ(y->rows(), 3u);
}

TEST(SolveLinear, SolutionsReverifyOnEveryRing) {
  std::vector<Ring> rings = {ZZ, QQ, Ring::prime_field(5), Ring::finite_field(2, 2), Ring::integers_mod(4),
                             Ring::integers_mod(6), Ring::product(ZZ, 2), Ring::product(Ring::integers_mod(4), 2)};
  Sampler rng(11);
  for (const Ring& r : rings)
    for (int trial = 0; trial < 60; ++trial) {
      auto m = static_cast<std::size_t>(rng.uniform(1, 4));
      auto n = static_cast<std::size_t>(rng.uniform(1, 4));
      Mat a = rng.matrix(r, m, n, 4);
      Mat b = a * rng.matrix(r, n, 2, 4);
      auto x = solve_linear(a, b);
      ASSERT_TRUE(x) << r.name() << " " << a.to_string();
      EXPECT_EQ(a * *x, b) << r.name();
    }
}

TEST(SolveLinear, VerdictMatchesEnumerationOverSmallRings) {
  Sampler rng(2024);
  for (std::int64_t n = 2; n <= 6; ++n) {
    const Ring r = Ring::integers_mod(n);
    for (int trial = 0; trial < 40; ++trial) {
      auto rows = static_cast<std::size_t>(rng.uniform(1, 3));
      auto cols = static_cast<std::size_t>(rng.uniform(1, 3));
      Mat a = rng.matrix(r, rows, cols, 0);
      Mat b = rng.matrix(r, rows, 1, 0);
      auto x = solve_linear(a, b);
      EXPECT_EQ(x.has_value(), brute_force_solvable(a, b)) << r.name() << " " << a.to_string() << " " << b.to_string();
      if (x) { EXPECT_EQ(a * *x, b); }
    }
  }
}

TEST(KernelGens, InjectiveOverIntegers) {
  Mat k = kernel_gens(ints(ZZ, {{2}}));
  EXPECT_EQ(k.rows(), 1u);
  EXPECT_EQ(k.cols(), 0u);
}

TEST(KernelGens, FullKernel) { EXPECT_EQ(kernel_gens(ints(ZZ, {{0}})), ints(ZZ, {{1}})); }

TEST(KernelGens, DoublingOnZMod4) {
  const Ring z4 = Ring::integers_mod(4);
  EXPECT_EQ(kernel_gens(ints(z4, {{2}})), ints(z4, {{2}}));
}

TEST(KernelGens, CanonicalAcrossEquivalentInputs) {
  // Row operations do not change the kernel, so the canonical basis must agree.
  Mat a = ints(ZZ, {{1, 2, 3}, {2, 4, 6}});
  Mat b = ints(ZZ, {{1, 2, 3}, {0, 0, 0}});
  EXPECT_EQ(kernel_gens(a), kernel_gens(b));
  EXPECT_EQ(kernel_gens(a), ints(ZZ, {{1, 0}, {1, 3}, {-1, -2}}));
}

TEST(KernelGens, SpansExactlyTheKernelOverFiniteRings) {
  std::vector<Ring> rings = {Ring::integers_mod(2), Ring::integers_mod(4), Ring::integers_mod(6),
                             Ring::prime_field(3), Ring::product(Ring::integers_mod(2), 2)};
  Sampler rng(5);
  for (const Ring& r : rings)
    for (int trial = 0; trial < 25; ++trial) {
      auto rows = static_cast<std::size_t>(rng.uniform(1, 3));
      auto cols = static_cast<std::size_t>(rng.uniform(1, 3));
      Mat a = rng.matrix(r, rows, cols, 0);
      Mat k = kernel_gens(a);
      ASSERT_EQ(k.rows(), cols);
      EXPECT_TRUE((a * k).is_zero());
      for_each_matrix(r, cols, 1, [&](const Mat& v) {
        if ((a * v).is_zero()) { EXPECT_TRUE(brute_force_solvable(k, v)) << r.name() << a.to_string() << v.to_string(); }
      });
    }
}

TEST(KernelGens, IntegerKernelsAreSaturated) {
  Sampler rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
    auto cols = static_cast<std::size_t>(rng.uniform(1, 5));
    Mat a = rng.matrix(ZZ, rows, cols, 3);
    Mat k = kernel_gens(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols() + rank(a), cols);
    // Every integer kernel vector v = A-kernel over Q restricted to Z lies in the span.
    Mat v = k * rng.matrix(ZZ, k.cols(), 1, 5);
    EXPECT_TRUE(solve_linear(k, v));
  }
}

TEST(Smith, DiagonalExample) {
  Mat a = ints(ZZ, {{2, 0}, {0, 3}});
  SmithForm s = smith_normal_form(a);
  EXPECT_EQ(s.D, ints(ZZ, {{1, 0}, {0, 6}}));
  EXPECT_EQ(s.U * s.D * s.V, a);
  EXPECT_TRUE(inverse(s.U));
  EXPECT_TRUE(inverse(s.V));
}

TEST(Smith, ZeroAndIdentity) {
  SmithForm z = smith_normal_form(Mat(ZZ, 2, 2));
  EXPECT_TRUE(z.D.is_zero());
  EXPECT_TRUE(z.U.is_identity());
  EXPECT_TRUE(z.V.is_identity());
  SmithForm i = smith_normal_form(Mat::identity(ZZ, 3));
  EXPECT_TRUE(i.D.is_identity());
}

TEST(Smith, UnsupportedRings) {
  EXPECT_THROW(smith_normal_form(ints(Ring::integers_mod(4), {{2}})), UnsupportedRing);
  EXPECT_THROW(smith_normal_form(ints(Ring::product(ZZ, 2), {{1}})), UnsupportedRing);
}

TEST(Smith, RandomIntegerMatricesFactorWithDivisibilityChain) {
  Sampler rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = static_cast<std::size_t>(rng.uniform(1, 5));
    auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    Mat a = rng.matrix(ZZ, m, n, 9);
    SmithForm s = smith_normal_form(a);
    ASSERT_EQ(s.U * s.D * s.V, a);
    EXPECT_TRUE((s.U * s.U_inv).is_identity());
    EXPECT_TRUE((s.V * s.V_inv).is_identity());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) { EXPECT_TRUE(ZZ.is_zero(s.D(i, j))); }
    for (std::size_t i = 0; i + 1 < std::min(m, n); ++i) {
      const mpz_class& d0 = Ring::z(s.D(i, i));
      const mpz_class& d1 = Ring::z(s.D(i + 1, i + 1));
      EXPECT_GE(d0, 0);
      if (d0 != 0) EXPECT_TRUE(mpz_divisible_p(d1.get_mpz_t(), d0.get_mpz_t()));
      else EXPECT_EQ(d1, 0);
    }
  }
}

TEST(Smith, FieldDiagonalIsZeroOne) {
  const Ring f = Ring::finite_field(3, 2);
  Sampler rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Mat a = rng.matrix(f, 3, 4, 0);
    SmithForm s = smith_normal_form(a);
    ASSERT_EQ(s.U * s.D * s.V, a);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(f.is_zero(s.D(i, i)) || f.is_one(s.D(i, i)));
  }
}

TEST(ApplyAut, IdentityFrobeniusRotation) {
  Mat a = ints(ZZ, {{1, 2}, {3, 4}});
  EXPECT_EQ(apply_aut(RingAut::identity(ZZ), a), a);

  const Ring f = Ring::finite_field(2, 2);
  Mat x(f, 1, 1, {Elem{Poly{0, 1}}});
  Mat x_sq(f, 1, 1, {Elem{Poly{1, 1}}});
  EXPECT_EQ(apply_aut(RingAut::frobenius(f, 1), x), x_sq);

  EXPECT_THROW(apply_aut(RingAut::identity(QQ), a), RingMismatch);
}

TEST(ApplyAut, MultiplicativeAndInvertible) {
  std::vector<RingAut> auts = {RingAut::frobenius(Ring::finite_field(2, 2), 1),
                               RingAut::rotation(Ring::product(ZZ, 3), 1), RingAut::identity(QQ)};
  Sampler rng(17);
  for (const auto& sigma : auts)
    for (int trial = 0; trial < 30; ++trial) {
      Mat a = rng.matrix(sigma.ring(), 2, 3, 4);
      Mat b = rng.matrix(sigma.ring(), 3, 2, 4);
      EXPECT_EQ(apply_aut(sigma, a * b), apply_aut(sigma, a) * apply_aut(sigma, b));
      EXPECT_EQ(apply_aut(sigma, a + a), apply_aut(sigma, a) + apply_aut(sigma, a));
      EXPECT_EQ(apply_aut(sigma.inverse(), apply_aut(sigma, a)), a);
    }
}
