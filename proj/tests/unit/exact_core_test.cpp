#include <gtest/gtest.h>

#include <random>

#include "signcert/exact/geometry.hpp"

using namespace signcert;

namespace {

const IVec3 e1 = IVec3::unit(0), e2 = IVec3::unit(1), e3 = IVec3::unit(2);

IVec3 random_vec(std::mt19937_64& rng, int lo, int hi, bool nonzero = true) {
  std::uniform_int_distribution<int> d(lo, hi);
  for (;;) {
    IVec3 v(d(rng), d(rng), d(rng));
    if (!nonzero || !v.is_zero()) return v;
  }
}

// Independent value of 2^gamma straight from MPFR at ~200 decimal digits.
double two_pow_gamma_oracle() {
  mpfr_t g, r;
  mpfr_inits2(700, g, r, nullptr);
  mpfr_sqrt_ui(g, 5, MPFR_RNDN);
  mpfr_add_ui(g, g, 1, MPFR_RNDN);
  mpfr_div_2ui(g, g, 1, MPFR_RNDN);
  mpfr_ui_pow(r, 2, g, MPFR_RNDN);
  double out = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(g, r, nullptr);
  return out;
}

}  // namespace

TEST(Ivec3, DotExamples) {
  EXPECT_EQ(dot(e1, e2), 0);
  EXPECT_EQ(dot(IVec3(1, 2, 3), IVec3(1, 2, 3)), 14);
  EXPECT_EQ(dot(IVec3(77, 0, 12), e3), 12);
}

TEST(Ivec3, CrossExamples) {
  EXPECT_EQ(cross(e1, e2), e3);
  EXPECT_EQ(cross(IVec3(3, 4, 0), e1), IVec3(0, 0, -4));
  EXPECT_TRUE(cross(IVec3(5, -7, 2), IVec3(5, -7, 2)).is_zero());
}

TEST(Ivec3, Det3Examples) {
  EXPECT_EQ(det3(e1, e2, e3), 1);
  EXPECT_EQ(det3(e1, e2, IVec3(77, 0, 12)), 12);
  EXPECT_EQ(det3(IVec3(6, 0, 1), e2, IVec3(77, 0, 12)), -5);
}

TEST(Ivec3, CrossAntisymmetricAndDetIsTripleProduct) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    IVec3 a = random_vec(rng, -50, 50, false), b = random_vec(rng, -50, 50, false),
          c = random_vec(rng, -50, 50, false);
    EXPECT_EQ(cross(a, b), -cross(b, a));
    EXPECT_EQ(cross(a + b, c), cross(a, c) + cross(b, c));
    EXPECT_EQ(det3(a, b, c), dot(a, cross(b, c)));
  }
}

TEST(Geometry, ProjDistSqExamples) {
  EXPECT_EQ(proj_dist_sq(e1, e1).value, 0);
  EXPECT_EQ(proj_dist_sq(e1, e2).value, 1);
  EXPECT_EQ(proj_dist_sq(IVec3(1, 1, 0), e1).value, Rat(1, 2));
  EXPECT_THROW(proj_dist_sq(IVec3(), e1), GeometryError);
}

TEST(Geometry, ProjDistBallExamples) {
  BallReal b = proj_dist_ball(e1, e2, 64);
  EXPECT_TRUE(b.enclosure().contains(Rat(1)));
  EXPECT_LE(b.enclosure().hi_rat() - b.enclosure().lo_rat(), Rat(1) / (Rat(Int(1) << 63)));

  // sqrt(1/2): the ball must straddle the irrational, checked on squares.
  BallReal h = proj_dist_ball(IVec3(1, 1, 0), e1, 64);
  EXPECT_LE(h.enclosure().lo_rat() * h.enclosure().lo_rat(), Rat(1, 2));
  EXPECT_GE(h.enclosure().hi_rat() * h.enclosure().hi_rat(), Rat(1, 2));
  Rat w = h.enclosure().hi_rat() - h.enclosure().lo_rat();
  EXPECT_LE(w, Rat(1) / Rat(Int(1) << 63));

  EXPECT_TRUE(proj_dist_ball(IVec3(3, 4, 0), e1, 64).enclosure().contains(Rat(4, 5)));
  EXPECT_THROW(proj_dist_ball(e1, IVec3(), 64), GeometryError);
}

TEST(Geometry, PrimitiveExamples) {
  EXPECT_FALSE(is_primitive_point(IVec3(2, 4, 6)));
  EXPECT_TRUE(is_primitive_point(e3));
  EXPECT_TRUE(is_primitive_point(IVec3(12, 0, -77)));
  EXPECT_FALSE(is_primitive_point(IVec3()));
  EXPECT_TRUE(is_primitive_pair(e1, e2));
  EXPECT_FALSE(is_primitive_pair(IVec3(2, 0, 0), IVec3(0, 2, 0)));
  EXPECT_TRUE(is_primitive_pair(e2, IVec3(77, 0, 12)));
}

TEST(Geometry, CompleteToBasisExamples) {
  EXPECT_EQ(complete_to_basis(e1, e2), e3);
  EXPECT_EQ(complete_to_basis(e2, e3), e1);
  IVec3 x(77, 0, 12);
  IVec3 z = complete_to_basis(e2, x);
  EXPECT_EQ(det3(e2, x, z), 1);
  EXPECT_THROW(complete_to_basis(IVec3(2, 0, 0), e2), GeometryError);
}

TEST(Geometry, CompleteToBasisIsShortestRepresentative) {
  // Brute-force oracle over a window of lattice translates.
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 150) {
    IVec3 a = random_vec(rng, -9, 9), b = random_vec(rng, -9, 9);
    if (!is_primitive_pair(a, b)) continue;
    ++checked;
    IVec3 z = complete_to_basis(a, b);
    ASSERT_EQ(det3(a, b, z), 1);
    for (int i = -25; i <= 25; ++i)
      for (int j = -25; j <= 25; ++j) {
        IVec3 w = z + Int(i) * a + Int(j) * b;
        ASSERT_TRUE(norm_sq(w) > norm_sq(z) || (norm_sq(w) == norm_sq(z) && !lex_less(w, z)))
            << a << " " << b << " -> " << z << " beaten by " << w;
      }
  }
}

TEST(Geometry, ElementaryDivisors) {
  EXPECT_EQ(elementary_divisors({IVec3(2, 0, 0), IVec3(0, 2, 0)}), (std::vector<Int>{2, 2}));
  EXPECT_EQ(elementary_divisors({IVec3(2, 0, 0), IVec3(0, 3, 0)}), (std::vector<Int>{1, 6}));
  EXPECT_EQ(elementary_divisors({IVec3(1, 2, 3), IVec3(2, 4, 6)}), (std::vector<Int>{1, 0}));
  EXPECT_EQ(elementary_divisors({e1, e2, IVec3(5, 7, 4)}), (std::vector<Int>{1, 1, 4}));
  EXPECT_EQ(elementary_divisors({IVec3(4, 6, 10)}), (std::vector<Int>{2}));
}

TEST(Geometry, PrimitivePairEquivalences) {
  std::mt19937_64 rng(2024);
  int prim = 0;
  for (int k = 0; k < 1000; ++k) {
    IVec3 a = random_vec(rng, -6, 6), b = random_vec(rng, -6, 6);
    const bool p = is_primitive_pair(a, b);
    bool completes = false;
    try {
      completes = det3(a, b, complete_to_basis(a, b)) == 1;
    } catch (const GeometryError&) {
    }
    const auto ed = elementary_divisors({a, b});
    EXPECT_EQ(p, completes);
    EXPECT_EQ(p, ed[0] == 1 && ed[1] == 1);
    prim += p;
  }
  EXPECT_GT(prim, 100);
  EXPECT_LT(prim, 1000);
}

TEST(Geometry, LagrangeIdentity) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    IVec3 x = random_vec(rng, -1000, 1000, false), y = random_vec(rng, -1000, 1000, false);
    EXPECT_EQ(norm_sq(cross(x, y)) + dot(x, y) * dot(x, y), norm_sq(x) * norm_sq(y));
  }
}

TEST(Geometry, TriangleInequality) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 1000; ++k) {
    IVec3 x = random_vec(rng, -50, 50), y = random_vec(rng, -50, 50), z = random_vec(rng, -50, 50);
    BallReal dxz = proj_dist_ball(x, z, 40), dxy = proj_dist_ball(x, y, 40), dyz = proj_dist_ball(y, z, 40);
    EXPECT_LE(dxz.enclosure().hi_rat(), dxy.enclosure().hi_rat() + dyz.enclosure().hi_rat() + Rat(1, 1 << 20));
    // Exactly: c <= a + b + 2 sqrt(ab) on squared distances.
    Rat a = proj_dist_sq(x, y).value, b = proj_dist_sq(y, z).value, c = proj_dist_sq(x, z).value;
    Rat lhs = c - a - b;
    EXPECT_TRUE(lhs <= 0 || lhs * lhs <= 4 * a * b);
    // and the same through a single certified comparison
    auto cmp = certified_compare(Real::sqrt_of(c), Real::sqrt_of(a) + Real::sqrt_of(b));
    EXPECT_NE(cmp.order, Ordering::Greater);
  }
}

TEST(Geometry, ProjDistSqInvariances) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> s(-9, 9);
  for (int k = 0; k < 1000; ++k) {
    IVec3 a = random_vec(rng, -40, 40), b = random_vec(rng, -40, 40);
    int ka = 0, kb = 0;
    while (ka == 0) ka = s(rng);
    while (kb == 0) kb = s(rng);
    Rat d = proj_dist_sq(a, b).value;
    EXPECT_EQ(proj_dist_sq(Int(ka) * a, Int(kb) * b).value, d);
    EXPECT_EQ(proj_dist_sq(b, a).value, d);
    EXPECT_GE(d, 0);
    EXPECT_LE(d, 1);
  }
}

TEST(Real, CertifiedCompareExamples) {
  EXPECT_EQ(certified_compare(Real::sqrt_of(Int(2)), Real::rational(Rat(3, 2))).order, Ordering::Less);

  Real pi([](mpfr_prec_t p) {
    Interval r(p);
    mpfr_const_pi(r.lo().get(), MPFR_RNDD);
    mpfr_const_pi(r.hi().get(), MPFR_RNDU);
    return r;
  });
  EXPECT_EQ(certified_compare(BallReal(pi, 64), BallReal(pi, 64), 1024).order, Ordering::Undecided);

  const double oracle = two_pow_gamma_oracle();
  ASSERT_GT(oracle, 3.06);
  ASSERT_LT(oracle, 3.08);
  Real two_gamma = pow(Real::from_long(2), Real::golden_ratio());
  EXPECT_EQ(certified_compare(two_gamma, Real::from_long(3)).order, Ordering::Greater);
  Interval e = two_gamma.enclose(128);
  EXPECT_LE(e.lo_double(), oracle);
  EXPECT_GE(e.hi_double(), oracle);
}

TEST(Real, ExactValuesCompareEqual) {
  Real a = Real::sqrt_of(Int(49));
  ASSERT_TRUE(a.is_exact());
  EXPECT_EQ(certified_compare(a, Real::from_long(7)).order, Ordering::Equal);
  EXPECT_EQ(certified_compare(Real::sqrt_of(Rat(9, 16)), Real::rational(Rat(3, 4))).order, Ordering::Equal);
}

TEST(Real, RefinementNeverWidens) {
  BallReal b(Real::sqrt_of(Int(3)), 64);
  Rat w = b.rad();
  for (mpfr_prec_t p : {32, 128, 48, 512}) {
    BallReal r = b.refined(p);
    EXPECT_LE(r.rad(), w);
    EXPECT_TRUE(r.enclosure().lo_rat() >= b.enclosure().lo_rat());
    EXPECT_TRUE(r.enclosure().hi_rat() <= b.enclosure().hi_rat());
    b = r;
    w = r.rad();
  }
}

TEST(Real, DyadicExportIsExact) {
  BallReal b(Real::sqrt_of(Int(2)), 80);
  auto d = b.dyadic();
  auto to_rat = [](const Int& man, long exp) {
    Rat q(man);
    if (exp >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), exp);
    else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -exp);
    return q;
  };
  EXPECT_EQ(to_rat(d.mid_man, d.mid_exp), b.mid());
  EXPECT_EQ(to_rat(d.rad_man, d.rad_exp), b.rad());
  EXPECT_GE(b.rad(), 0);
}
