#include <gtest/gtest.h>

#include "adcat/coherence.hpp"
#include "support.hpp"

using namespace adcat;

namespace {

const Ring ZZ = Ring::integers();
const Ring QQ = Ring::rationals();

Mor mor(const Ring& r, std::vector<std::vector<long long>> rows) { return Mor(Mat::from_ints(r, rows)); }

}  // namespace

TEST(IsExactAt, KernelInclusionIsExact) {
  Mor f1 = mor(ZZ, {{1, 2, 3}});
  Mor f0(kernel_gens(f1.mat()));
  auto v = is_exact_at(f0, f1);
  EXPECT_EQ(v.status, Exactness::Exact);
  EXPECT_TRUE(verify(v, f0, f1));
}

TEST(IsExactAt, DoublingIntoZeroIsNotExactOverIntegers) {
  Mor f0 = mor(ZZ, {{2}});
  Mor f1 = Mor::zero(ZZ, Obj(1), Obj(0));
  auto v = is_exact_at(f0, f1);
  EXPECT_EQ(v.status, Exactness::NotExact);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(*v.witness, Mat::from_ints(ZZ, {{1}}));
  EXPECT_TRUE(verify(v, f0, f1));
}

TEST(IsExactAt, DoublingIntoZeroIsExactOverRationals) {
  EXPECT_EQ(is_exact_at(mor(QQ, {{2}}), Mor::zero(QQ, Obj(1), Obj(0))).status, Exactness::Exact);
}

TEST(IsExactAt, NonzeroCompositeIsEvidence) {
  auto v = is_exact_at(mor(ZZ, {{1}}), mor(ZZ, {{1}}));
  EXPECT_EQ(v.status, Exactness::NotExact);
  ASSERT_TRUE(v.composite);
  EXPECT_THROW(is_exact_at(mor(ZZ, {{1}}), mor(ZZ, {{1, 1}})), ObjectMismatch);
}

TEST(IsExactAt, AgreesWithEnumerationOnZMod4) {
  const Ring r = Ring::integers_mod(4);
  std::size_t checked = 0;
  adcat::testing::for_each_matrix(r, 1, 2, [&](const Mat& a) {
    adcat::testing::for_each_matrix(r, 2, 1, [&](const Mat& b) {
      Mor f1(a), f0(b);
      bool exact = (a * b).is_zero();
      if (exact)
        adcat::testing::for_each_matrix(r, 2, 1, [&](const Mat& g) {
          if ((a * g).is_zero() && !adcat::testing::brute_force_solvable(b, g)) exact = false;
        });
      EXPECT_EQ(is_exact_at(f0, f1).status == Exactness::Exact, exact);
      ++checked;
    });
  });
  EXPECT_EQ(checked, 256u);
}

TEST(Vnr, Examples) {
  auto z = vnr_witness(Mor::zero(ZZ, Obj(2), Obj(3)));
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->g.is_zero());
  auto q = vnr_witness(mor(QQ, {{2}}));
  ASSERT_TRUE(q);
  EXPECT_TRUE(QQ.equal(q->g.mat()(0, 0), Elem{mpq_class(1, 2)}));
  EXPECT_FALSE(vnr_witness(mor(ZZ, {{2}})));
}

TEST(Vnr, FieldsAlwaysHaveWitnesses) {
  Sampler rng(3);
  for (const Ring& r : {QQ, Ring::prime_field(5), Ring::finite_field(3, 2)})
    for (int trial = 0; trial < 40; ++trial) {
      Mor f(rng.matrix(r, static_cast<std::size_t>(rng.uniform(1, 4)), static_cast<std::size_t>(rng.uniform(1, 4)), 4));
      auto w = vnr_witness(f);
      ASSERT_TRUE(w) << r.name();
      EXPECT_TRUE(verify(*w));
    }
}

TEST(Vnr, ProductRingsAssembleComponentwise) {
  Sampler rng(4);
  for (std::int64_t w = 2; w <= 4; ++w) {
    const Ring r = Ring::product(QQ, w);
    for (int trial = 0; trial < 10; ++trial) {
      Mor f(rng.matrix(r, 2, 3, 3));
      auto c = vnr_witness_componentwise(f);
      ASSERT_TRUE(c);
      EXPECT_TRUE(verify(*c));
    }
  }
  EXPECT_FALSE(vnr_witness_componentwise(Mor(Mat(Ring::product(ZZ, 2), 1, 1, {Elem{std::vector<Elem>{
                                                                               ZZ.from_int(1), ZZ.from_int(2)}}}))));
}

TEST(Factorization, Examples) {
  auto c = factor_monic_splitepi(mor(ZZ, {{2}}));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->f1, mor(ZZ, {{1}}));
  EXPECT_EQ(c->f0, mor(ZZ, {{2}}));
  EXPECT_EQ(c->s, mor(ZZ, {{1}}));

  auto z = factor_monic_splitepi(Mor::zero(ZZ, Obj(1), Obj(1)));
  ASSERT_TRUE(z);
  EXPECT_EQ(z->f1.cod().rank, 0u);
  EXPECT_TRUE(verify(*z));

  auto q = factor_monic_splitepi(mor(QQ, {{1, 0}, {0, 0}}));
  ASSERT_TRUE(q);
  EXPECT_EQ(q->f0, mor(QQ, {{1}, {0}}));
  EXPECT_EQ(q->f1, mor(QQ, {{1, 0}}));
  EXPECT_EQ(q->s, mor(QQ, {{1}, {0}}));

  EXPECT_THROW(factor_monic_splitepi(mor(Ring::integers_mod(4), {{2}})), UnsupportedRing);
}

TEST(Factorization, IntegerMatricesAndMonicStageExactness) {
  Sampler rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Mor f(rng.matrix(ZZ, static_cast<std::size_t>(rng.uniform(1, 5)), static_cast<std::size_t>(rng.uniform(1, 5)), 3));
    auto c = factor_monic_splitepi(f);
    ASSERT_TRUE(c);
    EXPECT_TRUE(verify(*c));
    // 0 -> B -> A0 is exact at B.
    EXPECT_EQ(is_exact_at(Mor::zero(ZZ, Obj(0), c->f0.dom()), c->f0).status, Exactness::Exact);
  }
}

TEST(Resolve, MonicIsLengthOne) {
  auto r = resolve(mor(ZZ, {{2}}), 3);
  ASSERT_TRUE(r.cert);
  EXPECT_EQ(r.cert->length, 1u);
  EXPECT_EQ(r.cert->stages.size(), 1u);
  EXPECT_TRUE(verify(*r.cert));
}

TEST(Resolve, KernelCycleOverZMod4) {
  auto r = resolve(mor(Ring::integers_mod(4), {{2}}), 6);
  EXPECT_FALSE(r.cert);
  EXPECT_TRUE(r.cycle_detected);
}

TEST(Resolve, IntegerKernelsCollapse) {
  auto r = resolve(mor(ZZ, {{1, 2}, {2, 4}}), 1);
  ASSERT_TRUE(r.cert);
  EXPECT_EQ(r.cert->stages.size(), 2u);
  EXPECT_EQ(r.cert->length, 1u);
  EXPECT_TRUE(verify(*r.cert));
}

TEST(Resolve, TamperedCertificateFails) {
  auto r = resolve(mor(ZZ, {{1, 2}, {2, 4}}), 2);
  ASSERT_TRUE(r.cert);
  ResolutionCert bad = *r.cert;
  bad.stages[1] = Mor(bad.stages[1].dom(), bad.stages[1].cod(), scale(ZZ.from_int(2), bad.stages[1].mat()));
  EXPECT_FALSE(verify(bad));
}

TEST(CertifyUniform, Examples) {
  BatchPolicy f5{Ring::prime_field(5), 30, 1, 2, 2, 4, 0, {}};
  EXPECT_EQ(certify_uniform(f5, 0).aggregate, Verdict::Certified);

  BatchPolicy zz{ZZ, 10, 2, 3, 3, 3, 0, {mor(ZZ, {{2}})}};
  auto rep = certify_uniform(zz, 0);
  EXPECT_EQ(rep.aggregate, Verdict::Refuted);
  EXPECT_EQ(rep.verdicts[0].verdict, Verdict::Refuted);

  BatchPolicy z1{ZZ, 60, 3, 5, 5, 3, 0, {}};
  EXPECT_EQ(certify_uniform(z1, 1).aggregate, Verdict::Certified);
  EXPECT_EQ(certify_uniform(z1, 2).aggregate, Verdict::Certified);

  BatchPolicy z4{Ring::integers_mod(4), 0, 0, 1, 1, 0, 6, {mor(Ring::integers_mod(4), {{2}})}};
  EXPECT_EQ(certify_uniform(z4, 2).aggregate, Verdict::Undecided);
}
