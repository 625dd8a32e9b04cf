#include <gtest/gtest.h>

#include <random>

#include "signcert/stepper/step.hpp"

using namespace signcert;

namespace {

const IVec3 e1 = IVec3::unit(0), e2 = IVec3::unit(1), e3 = IVec3::unit(2);

const ConvergentTable& table() {
  static const ConvergentTable t = convergents(QuadraticIrrational::sqrt2_minus_1(), 40, Rat(4));
  return t;
}

IVec3 random_vec(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return IVec3(d(rng), d(rng), d(rng));
}

}  // namespace

TEST(Decompose, Examples) {
  auto d = decompose_in_basis(e3, e1, e2);
  EXPECT_EQ(d.r, 0);
  EXPECT_EQ(d.s, 0);
  EXPECT_EQ(d.t_sign, 1);
  d = decompose_in_basis(e3 + e1, e1, e2);
  EXPECT_EQ(d.r, 1);
  EXPECT_EQ(d.s, 0);
  EXPECT_EQ(d.t_sign, 1);
  d = decompose_in_basis(-e3, e1, e2);
  EXPECT_EQ(d.t_sign, -1);
  EXPECT_THROW(decompose_in_basis(IVec3(0, 0, 2), e1, e2), GeometryError);
}

TEST(Decompose, RecombinesExactly) {
  std::mt19937_64 rng(3);
  int done = 0;
  while (done < 200) {
    IVec3 a = random_vec(rng, -20, 20), b = random_vec(rng, -20, 20);
    if (!is_primitive_pair(a, b)) continue;
    ++done;
    IVec3 y0 = complete_to_basis(a, b);
    auto d = decompose_in_basis(y0, a, b);
    // t u = y0 - r a - s b must be parallel to a ^ b with t = +-1/H
    const Int H2 = norm_sq(cross(a, b));
    IVec3 c = cross(a, b);
    for (int k = 0; k < 3; ++k) {
      Rat tu = Rat(y0[k]) - d.r * a[k] - d.s * b[k];
      EXPECT_EQ(tu * H2, Rat(d.t_sign * c[k]));
    }
  }
}

TEST(UnitNormal, Examples) {
  auto [r1, n1] = unit_normal_sq(e1, e2);
  EXPECT_EQ(r1, e3);
  EXPECT_EQ(n1, 1);
  auto [r2, n2] = unit_normal_sq(e2, IVec3(77, 0, 12));
  EXPECT_EQ(r2, IVec3(12, 0, -77));
  EXPECT_EQ(n2, 6073);
  auto [r3, n3] = unit_normal_sq(IVec3(1, 1, 0), IVec3(1, -1, 0));
  EXPECT_EQ(r3, IVec3(0, 0, -2));
  EXPECT_EQ(n3, 4);
  EXPECT_THROW(unit_normal_sq(e1, IVec3(3, 0, 0)), GeometryError);
}

TEST(RecursiveStep, HandFixture) {
  StepInput in{e1, e2, YSpec(Rat(4)), Int(10), &table()};
  auto [out, cert] = recursive_step(in);
  EXPECT_EQ(out.conv_index, 4u);
  EXPECT_EQ(out.y0, e3);
  EXPECT_EQ(out.r, 0);
  EXPECT_EQ(out.s, 0);
  EXPECT_EQ(out.a, 6);
  EXPECT_EQ(out.m, 0);
  EXPECT_EQ(out.y, IVec3(6, 0, 1));
  EXPECT_EQ(out.x_prime, IVec3(77, 0, 12));
  EXPECT_EQ(cert.det_y, 1);
  EXPECT_EQ(cert.det_x_prime, 12);
  EXPECT_EQ(cert.det_y_x_prime, -5);
  EXPECT_EQ(norm_sq(out.y), 37);
  EXPECT_EQ(norm_sq(out.x_prime), 6073);
  EXPECT_TRUE(is_primitive_pair(e2, out.x_prime));
  EXPECT_TRUE(cert.ok());
  EXPECT_TRUE(cert.a_note.empty());
}

TEST(RecursiveStep, RejectsBadHypothesis) {
  StepInput in{e1, e2, YSpec(Rat(3)), Int(10), &table()};  // 2(1 + 1) > 3
  try {
    recursive_step(in);
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.check().clause, "2(|x*| + |x|) <= Y");
    EXPECT_EQ(e.check().status, Status::Fail);
  }
  StepInput np{IVec3(2, 0, 0), e2, YSpec(Rat(10)), Int(10), &table()};
  EXPECT_THROW(recursive_step(np), StepError);
}

TEST(RecursiveStep, GammaPowerTarget) {
  StepInput in{e1, e2, YSpec(PowGamma{Int(3)}), Int(40), &table()};
  auto [out, cert] = recursive_step(in);
  EXPECT_EQ(cert.det_y, 1);
  EXPECT_EQ(cert.det_x_prime, table().q(out.conv_index));
  EXPECT_TRUE(cert.ok());
}

TEST(RecursiveStep, RandomValidInputs) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> extra(0, 500), ratio(1, 4000);
  int done = 0;
  while (done < 300) {
    IVec3 xs = random_vec(rng, -30, 30), x = random_vec(rng, -30, 30);
    if (!is_primitive_pair(xs, x)) continue;
    ++done;
    // Y rational above 2(|x*| + |x|) using integer ceilings of the norms
    Int bound = 0;
    for (const IVec3* v : {&xs, &x}) {
      Int s;
      Int n2 = norm_sq(*v);
      mpz_sqrt(s.get_mpz_t(), n2.get_mpz_t());
      bound += s + 1;
    }
    const Rat Y(2 * bound + extra(rng), 1 + done % 3);
    if (Y < 2 * bound) continue;
    Int Xp;
    Rat target = Y * ratio(rng) / 2 + Y;
    mpz_cdiv_q(Xp.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
    StepInput in{xs, x, YSpec(Y), Xp, &table()};
    auto [out, cert] = recursive_step(in);
    const std::size_t n = out.conv_index;
    ASSERT_EQ(det3(xs, x, out.y), 1);
    ASSERT_EQ(det3(xs, x, out.x_prime), table().q(n));
    ASSERT_EQ(det3(out.y, x, out.x_prime), -table().p(n));
    ASSERT_TRUE(cert.ok());
    // q_{n-1} <= 2X'/Y < q_n, exactly
    const Rat T = Rat(2 * Xp) / Y;
    ASSERT_LE(Rat(table().q(n - 1)), T);
    ASSERT_LT(T, Rat(table().q(n)));
  }
}

TEST(Identities, DoubleCrossIsDetTimesMiddle) {
  std::mt19937_64 rng(1000);
  for (int k = 0; k < 1000; ++k) {
    IVec3 a = random_vec(rng, -100, 100), b = random_vec(rng, -100, 100), c = random_vec(rng, -100, 100);
    EXPECT_EQ(cross(cross(a, b), cross(b, c)), det3(a, b, c) * b);
  }
}
