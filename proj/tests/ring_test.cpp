#include <gtest/gtest.h>

#include "adcat/ring.hpp"
#include "adcat/sampling.hpp"
#include "support.hpp"

using namespace adcat;

namespace {

Scalar s(const Ring& r, long long v) { return {r, r.from_int(v)}; }

Elem f4(std::int64_t c0, std::int64_t c1) { return Elem{Poly{c0, c1}}; }

std::vector<Ring> finite_rings() {
  return {Ring::prime_field(5), Ring::finite_field(2, 2), Ring::integers_mod(4), Ring::integers_mod(6),
          Ring::product(Ring::integers_mod(3), 2)};
}

}  // namespace

TEST(RingArith, IntegerProduct) {
  const Ring zz = Ring::integers();
  auto r = ring_arith(s(zz, 2), s(zz, 3), ArithOp::Mul);
  EXPECT_TRUE(zz.equal(r.value, zz.from_int(6)));
}

TEST(RingArith, CharacteristicTwo) {
  const Ring z2 = Ring::integers_mod(2);
  auto r = ring_arith(s(z2, 1), s(z2, 1), ArithOp::Add);
  EXPECT_TRUE(z2.is_zero(r.value));
}

TEST(RingArith, GeneratorOfF4SquaresToXPlusOne) {
  const Ring f = Ring::finite_field(2, 2);
  EXPECT_EQ(f.field_modulus(), (Poly{1, 1, 1}));
  auto r = ring_arith({f, f4(0, 1)}, {f, f4(0, 1)}, ArithOp::Mul);
  EXPECT_TRUE(f.equal(r.value, f4(1, 1)));
}

TEST(RingArith, MixedRingsAreRejected) {
  EXPECT_THROW(ring_arith(s(Ring::integers(), 1), s(Ring::rationals(), 1), ArithOp::Add), RingMismatch);
  EXPECT_THROW(ring_arith(s(Ring::integers_mod(4), 1), s(Ring::integers_mod(6), 1), ArithOp::Mul), RingMismatch);
}

TEST(RingArith, RationalsAreExact) {
  const Ring q = Ring::rationals();
  Elem third{mpq_class(1, 3)};
  Elem sum = q.add(q.add(third, third), third);
  EXPECT_TRUE(q.is_one(sum));
}

TEST(RingSpec, InvalidParametersAreRejected) {
  EXPECT_THROW(Ring::prime_field(4), InvalidRing);
  EXPECT_THROW(Ring::finite_field(6, 2), InvalidRing);
  EXPECT_THROW(Ring::integers_mod(1), InvalidRing);
  EXPECT_THROW(Ring::product(Ring::integers(), 0), InvalidRing);
}

TEST(RingSpec, FieldAxiomsOnFiniteRings) {
  for (const Ring& r : finite_rings()) {
    const auto elems = adcat::testing::all_elements(r);
    ASSERT_EQ(mpz_class(static_cast<long>(elems.size())), r.cardinality()) << r.name();
    for (const auto& a : elems) {
      auto inv = r.inverse(a);
      if (inv) { EXPECT_TRUE(r.is_one(r.mul(a, *inv))) << r.name(); }
      if (r.is_field()) { EXPECT_EQ(inv.has_value(), !r.is_zero(a)) << r.name(); }
      for (const auto& b : elems) {
        EXPECT_TRUE(r.equal(r.mul(a, b), r.mul(b, a)));
        EXPECT_TRUE(r.equal(r.sub(r.add(a, b), b), a));
      }
    }
  }
}

TEST(RingAut, FrobeniusSquaresInF4) {
  const Ring f = Ring::finite_field(2, 2);
  auto frob = RingAut::frobenius(f, 1);
  EXPECT_TRUE(f.equal(frob.apply(f4(0, 1)), f4(1, 1)));
  EXPECT_TRUE(f.equal(frob.apply(frob.apply(f4(0, 1))), f4(0, 1)));
}

TEST(RingAut, RotationSwapsCoordinates) {
  const Ring zz = Ring::integers();
  const Ring p = Ring::product(zz, 2);
  auto rot = RingAut::rotation(p, 1);
  Elem ab{std::vector<Elem>{zz.from_int(3), zz.from_int(7)}};
  Elem ba{std::vector<Elem>{zz.from_int(7), zz.from_int(3)}};
  EXPECT_TRUE(p.equal(rot.apply(ab), ba));
}

TEST(RingAut, KindsAreCheckedAgainstTheRing) {
  EXPECT_THROW(RingAut::frobenius(Ring::integers(), 1), UnsupportedRing);
  EXPECT_THROW(RingAut::rotation(Ring::finite_field(2, 2), 1), UnsupportedRing);
}

TEST(RingAut, AutomorphismLawsOnEveryElement) {
  std::vector<RingAut> auts = {RingAut::frobenius(Ring::finite_field(2, 3), 1),
                               RingAut::frobenius(Ring::finite_field(3, 2), 1),
                               RingAut::rotation(Ring::product(Ring::integers_mod(2), 3), 1),
                               RingAut::identity(Ring::integers_mod(6))};
  for (const auto& sigma : auts) {
    const Ring& r = sigma.ring();
    EXPECT_TRUE(r.is_zero(sigma.apply(r.zero())));
    EXPECT_TRUE(r.is_one(sigma.apply(r.one())));
    const auto elems = adcat::testing::all_elements(r);
    for (const auto& a : elems) {
      EXPECT_TRUE(r.equal(sigma.inverse().apply(sigma.apply(a)), a)) << sigma.name();
      for (const auto& b : elems) {
        EXPECT_TRUE(r.equal(sigma.apply(r.add(a, b)), r.add(sigma.apply(a), sigma.apply(b))));
        EXPECT_TRUE(r.equal(sigma.apply(r.mul(a, b)), r.mul(sigma.apply(a), sigma.apply(b))));
      }
    }
  }
}

TEST(RingAut, PowersCompose) {
  auto sigma = RingAut::rotation(Ring::product(Ring::integers(), 3), 1);
  Sampler rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Elem a = rng.element(sigma.ring(), 5);
    for (int j = -4; j <= 4; ++j) {
      Elem step = a;
      const int reps = j < 0 ? -j : j;
      for (int t = 0; t < reps; ++t) step = (j < 0 ? sigma.inverse() : sigma).apply(step);
      EXPECT_TRUE(sigma.ring().equal(sigma.pow(j).apply(a), step));
    }
  }
}
