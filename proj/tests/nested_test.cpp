#include <gtest/gtest.h>

#include "adcat/nested.hpp"

using namespace adcat;

namespace {

const Ring ZZ = Ring::integers();
const Ring QQ = Ring::rationals();

Obj graded(std::vector<std::size_t> g) { return Obj(g.size(), g); }

Mat ints(const Ring& r, std::vector<std::vector<long long>> rows) { return Mat::from_ints(r, rows); }

// c * Id on the canonical rank-1 sequence, entries spelled out to `h`.
SeqMor scalar_seq(const Ring& r, long long c, std::size_t h) {
  SeqObj a({}, 1);
  std::vector<Mat> es(h, Mat::scalar(r, 1, r.from_int(c)));
  return SeqMor(r, a, a, es, r.from_int(c));
}

// Id on the first `n` entries of the canonical rank-1 sequence, then zero.
SeqMor truncated_identity(const Ring& r, std::size_t n) {
  SeqObj a({}, 1);
  std::vector<Mat> es;
  for (std::size_t m = 0; m < n; ++m) es.push_back(Mat::identity(r, 1));
  return SeqMor(r, a, a, es, std::nullopt);
}

}  // namespace

TEST(Membership, Levels) {
  SeqObj x({graded({7, 9}), Obj(0), graded({0})}, 0);
  SeqObj deep({graded({9}), graded({9}), graded({9}), graded({9}), graded({9}), graded({9}), graded({9}),
               graded({9}), graded({9}), graded({9})},
              0);
  EXPECT_EQ(membership_level(deep, 7), 7u);
  EXPECT_EQ(membership_level(x, 2), 0u);
  EXPECT_EQ(membership_level(x, 1), 1u);
  EXPECT_EQ(membership_level(SeqObj::canonical(2), 3), 3u);
  EXPECT_EQ(membership_level(SeqObj::zero(), 5), 5u);
}

TEST(Admissible, FromMorphism) {
  SeqObj dom({graded({0}), graded({3}), graded({1}), graded({5})}, 0);
  SeqMor f = SeqMor::zero(ZZ, dom, dom);
  AdmissibleFn i = admissible_from(f);
  EXPECT_EQ(i.values, (std::vector<std::size_t>{0, 1, 1, 3}));
  EXPECT_EQ(i(4), 4u);
  EXPECT_EQ(i(10), 10u);
  EXPECT_TRUE(is_admissible(i));
  EXPECT_TRUE(lies_in(f, i));
}

TEST(Admissible, OrderAndDirectedness) {
  AdmissibleFn a{{0, 1, 2}, 0}, b{{0, 0, 1}, 1};
  EXPECT_TRUE(precedes(a, b));
  EXPECT_FALSE(precedes(b, a));
  AdmissibleFn k = directed_min(a, b);
  EXPECT_TRUE(is_admissible(k));
  EXPECT_TRUE(precedes(a, k));
  EXPECT_TRUE(precedes(b, k));
  EXPECT_FALSE(is_admissible(AdmissibleFn{{1}, 0}));
  EXPECT_FALSE(is_admissible(AdmissibleFn{{0, 1, 0}, 0}));
}

TEST(Admissible, RandomMorphismsGiveAdmissibleFunctions) {
  Sampler rng(11);
  for (int t = 0; t < 60; ++t) {
    SeqMor f = random_seq_mor(rng, ZZ, static_cast<std::size_t>(rng.uniform(0, 6)), 3);
    SeqMor g = random_seq_mor(rng, ZZ, static_cast<std::size_t>(rng.uniform(0, 6)), 3);
    AdmissibleFn i = admissible_from(f), j = admissible_from(g);
    ASSERT_TRUE(is_admissible(i));
    EXPECT_TRUE(lies_in(f, i));
    AdmissibleFn k = directed_min(i, j);
    EXPECT_TRUE(is_admissible(k));
    EXPECT_TRUE(precedes(i, k) && precedes(j, k));
    EXPECT_TRUE(lies_in(f, k) && lies_in(g, k));
  }
}

TEST(SeqArithmetic, ScalarTailsMultiply) {
  SeqMor p = seq_compose(scalar_seq(ZZ, 2, 0), scalar_seq(ZZ, 3, 0));
  ASSERT_TRUE(p.tail());
  EXPECT_TRUE(ZZ.equal(*p.tail(), ZZ.from_int(6)));
  EXPECT_EQ(p.at(40), ints(ZZ, {{6}}));
  EXPECT_FALSE(scalar_seq(ZZ, 0, 1).tail());
}

TEST(SeqArithmetic, MixedHorizons) {
  SeqMor f = scalar_seq(ZZ, 2, 2), g = scalar_seq(ZZ, 5, 3);
  SeqMor s = seq_add(f, g);
  EXPECT_EQ(s.horizon(), 3u);
  EXPECT_EQ(s.at(2), ints(ZZ, {{7}}));
  EXPECT_EQ(seq_compose(g, f).horizon(), 3u);
  EXPECT_EQ(seq_compose(g, f), scalar_seq(ZZ, 10, 0));
  EXPECT_THROW(seq_compose(f, SeqMor::zero(ZZ, SeqObj::zero(), SeqObj::zero())), ObjectMismatch);
}

TEST(LimitEq, Examples) {
  SeqMor f = scalar_seq(ZZ, 2, 4);
  std::vector<Mat> es = f.entries();
  es[1] = ints(ZZ, {{9}});
  es[3] = ints(ZZ, {{0}});
  SeqMor g(ZZ, f.dom(), f.cod(), es, ZZ.from_int(2));
  auto c = limit_eq(f, g);
  EXPECT_TRUE(c.equal);
  EXPECT_EQ(c.differing, (std::vector<std::size_t>{1, 3}));
  EXPECT_FALSE(limit_eq(f, scalar_seq(ZZ, 3, 4)).equal);
  EXPECT_THROW(limit_eq(f, SeqMor::zero(ZZ, SeqObj::zero(), f.cod())), ObjectMismatch);
}

TEST(LimitEq, CongruenceUnderComposition) {
  Sampler rng(12);
  for (int t = 0; t < 40; ++t) {
    SeqMor f = scalar_seq(ZZ, rng.uniform(-3, 3), 3);
    std::vector<Mat> es = f.entries();
    es[static_cast<std::size_t>(rng.uniform(0, 2))] = rng.matrix(ZZ, 1, 1, 5);
    SeqMor f2(ZZ, f.dom(), f.cod(), es, f.tail());
    SeqMor h = scalar_seq(ZZ, rng.uniform(-3, 3), static_cast<std::size_t>(rng.uniform(0, 5)));
    ASSERT_TRUE(limit_eq(f, f2).equal);
    EXPECT_TRUE(limit_eq(seq_compose(h, f), seq_compose(h, f2)).equal);
    EXPECT_TRUE(limit_eq(seq_compose(f, h), seq_compose(f2, h)).equal);
    EXPECT_TRUE(limit_eq(seq_add(f, h), seq_add(f2, h)).equal);
  }
}

TEST(FactorThroughT, ExactlyTheMorphismsLimitEqualToZero) {
  Sampler rng(13);
  for (int t = 0; t < 80; ++t) {
    SeqMor f = random_seq_mor(rng, QQ, static_cast<std::size_t>(rng.uniform(0, 4)), 3);
    const bool zero_in_L = limit_eq(f, SeqMor::zero(QQ, f.dom(), f.cod())).equal;
    auto fac = factor_through_T(f);
    ASSERT_EQ(fac.has_value(), zero_in_L);
    if (!fac) continue;
    EXPECT_EQ(fac->middle.tail_rank(), 0u);
    EXPECT_EQ(seq_compose(fac->b, fac->a), f);
  }
}

TEST(LiftInS, Examples) {
  const SeqObj a({}, 1);
  const SeqMor to_zero = SeqMor::zero(ZZ, a, SeqObj::zero());

  // 2 = 1 * 2 everywhere, tail included.
  auto ok = lift_in_S(scalar_seq(ZZ, 2, 3), scalar_seq(ZZ, 1, 3), to_zero);
  ASSERT_TRUE(ok.nu);
  EXPECT_EQ(*ok.nu, scalar_seq(ZZ, 2, 0));
  EXPECT_TRUE(ok.in_S);

  // 3 is not a multiple of 2: the first component fails.
  auto bad = lift_in_S(scalar_seq(ZZ, 3, 3), scalar_seq(ZZ, 2, 3), to_zero);
  EXPECT_FALSE(bad.nu);
  EXPECT_EQ(bad.failed_index, std::optional<std::size_t>(0));

  // Precondition: f_cur o mu must vanish.
  try {
    lift_in_S(scalar_seq(ZZ, 1, 2), scalar_seq(ZZ, 1, 2), scalar_seq(ZZ, 1, 2));
    FAIL() << "expected a precondition violation";
  } catch (const PreconditionViolation& e) {
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(LiftInL, Examples) {
  const SeqObj a({}, 1);
  const SeqMor to_zero = SeqMor::zero(ZZ, a, SeqObj::zero());

  // Bad components below the horizon are discarded in L.
  std::vector<Mat> es(3, ints(ZZ, {{4}}));
  es[1] = ints(ZZ, {{3}});
  SeqMor mu(ZZ, a, a, es, ZZ.from_int(4));
  auto l = lift_in_L(mu, scalar_seq(ZZ, 2, 3), to_zero);
  ASSERT_TRUE(l.nu);
  EXPECT_EQ(l.threshold, 2u);
  EXPECT_TRUE(limit_eq(seq_compose(scalar_seq(ZZ, 2, 3), *l.nu), mu).equal);
  EXPECT_FALSE(lift_in_S(mu, scalar_seq(ZZ, 2, 3), to_zero).nu);

  // Nothing to discard.
  auto same = lift_in_L(scalar_seq(ZZ, 6, 2), scalar_seq(ZZ, 3, 2), to_zero);
  ASSERT_TRUE(same.nu);
  EXPECT_EQ(same.threshold, 0u);

  // A tail obstruction survives the quotient: 1 is not 2 x over the integers.
  auto tail = lift_in_L(scalar_seq(ZZ, 1, 2), scalar_seq(ZZ, 2, 2), to_zero);
  EXPECT_FALSE(tail.nu);
  EXPECT_TRUE(tail.tail_failure);
  EXPECT_TRUE(lift_in_L(scalar_seq(QQ, 1, 2), scalar_seq(QQ, 2, 2), SeqMor::zero(QQ, a, SeqObj::zero())).nu);
}

TEST(LiftInS, LiftedMapsStayAtTheDirectedBound) {
  Sampler rng(14);
  const Ring f5 = Ring::prime_field(5);
  for (int t = 0; t < 40; ++t) {
    SeqMor g = random_seq_mor(rng, f5, 4, 4);
    // mu = g o x is liftable through g by construction.
    std::vector<Mat> xs;
    for (std::size_t m = 0; m < 4; ++m) xs.push_back(rng.matrix(f5, g.dom().at(m).rank, g.dom().at(m).rank, 4));
    SeqMor x(f5, g.dom(), g.dom(), xs, g.dom().tail_rank() ? std::optional<Elem>(f5.from_int(1)) : std::nullopt);
    SeqMor mu = seq_compose(g, x);
    auto res = lift_in_S(mu, g, SeqMor::zero(f5, g.cod(), SeqObj::zero()));
    ASSERT_TRUE(res.nu);
    EXPECT_EQ(seq_compose(g, *res.nu), mu);
    EXPECT_TRUE(res.in_S);
  }
}

TEST(CertifySL, Verdicts) {
  auto f5 = certify_S_L({Ring::prime_field(5)}, 0, 20, 4, 1);
  EXPECT_EQ(f5.aggregate(), Verdict::Certified);

  auto z1 = certify_S_L({ZZ}, 1, 20, 8, 2);
  EXPECT_EQ(z1.aggregate(), Verdict::Certified);
  for (const auto& t : z1.trials) EXPECT_TRUE(std::holds_alternative<SeqFactorization>(t.certificate));

  auto z0 = certify_S_L({ZZ}, 0, 5, 4, 3);
  EXPECT_EQ(z0.s_aggregate, Verdict::Refuted);
  EXPECT_EQ(z0.l_aggregate, Verdict::Refuted);
  EXPECT_EQ(z0.trials[0].counterexample_index, std::optional<std::size_t>(0));
  EXPECT_EQ(*z0.trials[0].counterexample, ints(ZZ, {{2}}));

  auto z2 = certify_S_L({ZZ}, 2, 10, 4, 4);
  EXPECT_EQ(z2.aggregate(), Verdict::Certified);
}

TEST(CertifySL, CertificatesReverify) {
  auto rep = certify_S_L({QQ}, 0, 15, 5, 9);
  for (const auto& t : rep.trials) {
    ASSERT_TRUE(std::holds_alternative<SeqVnr>(t.certificate));
    EXPECT_TRUE(verify(std::get<SeqVnr>(t.certificate), t.f));
  }
}

// Eventually zero endomorphisms of the canonical sequence do not form a
// finitely generated subfunctor: anything supported below H misses the
// identity truncated at H + 1.
TEST(Noetherian, EventuallyZeroMapsNeedUnboundedHorizons) {
  Sampler rng(15);
  const SeqObj a({}, 1);
  for (std::size_t h = 1; h <= 6; ++h) {
    std::vector<Mat> es;
    for (std::size_t m = 0; m < h; ++m) es.push_back(rng.matrix(ZZ, 1, 1, 3));
    SeqMor gen(ZZ, a, a, es, std::nullopt);
    ASSERT_TRUE(factor_through_T(gen));
    auto res = lift_in_S(truncated_identity(ZZ, h + 1), gen, SeqMor::zero(ZZ, a, SeqObj::zero()));
    EXPECT_FALSE(res.nu);
    ASSERT_TRUE(res.failed_index);
    EXPECT_LE(*res.failed_index, h);
  }
}
