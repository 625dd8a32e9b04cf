#include <gtest/gtest.h>

#include "signcert/builder/build.hpp"

using namespace signcert;

namespace {

PlanInput toy_input() {
  PlanInput in;
  in.delta = Rat(3, 2);
  in.toy = true;
  in.steps = 4;
  return in;
}

// Toy run whose delta chain holds: multiplier 5 instead of the toy minimum 4.
const ConstructionState& guarded_toy() {
  static const ConstructionState st = [] {
    PlanInput in = toy_input();
    in.steps = 5;
    in.multiplier = Int(5);
    const PlanResult r = make_plan(in);
    return build(r.plan, r.schedule);
  }();
  return st;
}

// Cross product written out by hand, independent of the library's.
IVec3 cross_ref(const IVec3& a, const IVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Int det_ref(const IVec3& a, const IVec3& b, const IVec3& c) {
  const IVec3 bc = cross_ref(b, c);
  return a[0] * bc[0] + a[1] * bc[1] + a[2] * bc[2];
}

}  // namespace

TEST(Build, ToyMinimumMultiplierFailsTheFirstHalving) {
  const PlanResult r = make_plan(toy_input());
  try {
    build(r.plan, r.schedule);
    FAIL() << "expected BuildError";
  } catch (const BuildError& e) {
    EXPECT_EQ(e.check().id, "delta.halving");
    EXPECT_EQ(e.check().index, 1);
    EXPECT_EQ(e.step(), 1u);
  }
  BuildOptions o;
  o.strict_ledger = false;
  const ConstructionState st = build(r.plan, r.schedule, o);
  EXPECT_EQ(st.N(), 4u);
  EXPECT_EQ(st.steps.size(), 3u);
  for (const auto& s : st.steps) EXPECT_TRUE(s.cert.ok());
  std::vector<std::string> failing;
  for (const auto& c : st.checks)
    if (!c.passed()) failing.push_back(c.id + "[" + std::to_string(c.index) + "]");
  EXPECT_EQ(failing, std::vector<std::string>{"delta.halving[1]"});
}

TEST(Build, GuardedToyLedgerIsClean) {
  const ConstructionState& st = guarded_toy();
  EXPECT_EQ(st.plan.x1, IVec3(-1, 5, 5));
  EXPECT_EQ(st.N(), 5u);
  EXPECT_TRUE(st.ok());
  EXPECT_EQ(st.schedule.log2X[2], 15);
}

TEST(Build, DeterminantIdentitiesAreExact) {
  const ConstructionState& st = guarded_toy();
  for (std::size_t i = 1; i < st.N(); ++i) {
    const IVec3 &xm = st.x[i - 1], &x = st.x[i], &xn = st.x[i + 1], &y = st.y[i];
    const std::size_t n = st.steps[i - 1].out.conv_index;
    const Int &pn = st.table.p(n), &qn = st.table.q(n);
    EXPECT_EQ(det_ref(xm, x, y), 1) << i;
    EXPECT_EQ(det_ref(xm, x, xn), qn) << i;
    EXPECT_EQ(det_ref(y, x, xn), -pn) << i;
    EXPECT_EQ(cross_ref(cross_ref(xm, x), cross_ref(x, xn)), qn * x) << i;
  }
}

TEST(Build, NormSandwiches) {
  const ConstructionState& st = guarded_toy();
  const Real g = Real::golden_ratio(), C1 = Real::rational(st.plan.C1);
  for (std::size_t i = 1; i < st.N(); ++i) {
    const Real Xi = st.X(i), Y = pow(Xi, g);
    EXPECT_TRUE(check_le("X^g <= |y|", Y, norm(st.y[i])).passed()) << i;
    EXPECT_TRUE(check_le("|y| <= 2 X^g", norm(st.y[i]), Real::from_long(2) * Y).passed()) << i;
    // X_{i+1} is a power of two: compare squares exactly.
    const Int Xn = st.schedule.X_int(i + 1);
    EXPECT_LE(Xn * Xn, norm_sq(st.x[i + 1])) << i;
    EXPECT_TRUE(check_le("|x'| <= 5 C1 X'", norm(st.x[i + 1]), Real::from_long(5) * C1 * st.X(i + 1)).passed());
  }
}

TEST(Build, DeltaChainHalves) {
  const ConstructionState& st = guarded_toy();
  ASSERT_EQ(st.delta_ub.size(), st.N() + 2);
  for (std::size_t i = 1; i <= st.N() + 1; ++i) EXPECT_LE(st.delta_ub[i], st.delta_ub[i - 1]) << i;
  for (const auto& c : st.checks)
    if (c.id == "delta.halving" || c.id == "part3.separation" || c.id == "intersection") EXPECT_TRUE(c.passed());
}

TEST(Enclosure, XDotULowerExample) {
  DirectionEnclosure u;
  u.rep = cross(IVec3::unit(0), IVec3::unit(1));
  u.radius_ub = 0;
  const Real lo = x_dot_u_lower(IVec3(1, 2, 3), u);
  ASSERT_TRUE(lo.is_exact());
  EXPECT_EQ(*lo.exact(), 3);
  u.radius_ub = Rat(1, 100);
  EXPECT_TRUE(check_lt("", x_dot_u_lower(IVec3(1, 2, 3), u), Real::from_long(3)).passed());
  EXPECT_TRUE(check_gt("", x_dot_u_upper(IVec3(1, 2, 3), u), Real::from_long(3)).passed());
}

TEST(Enclosure, RadiiShrinkAndLimitsAgree) {
  const ConstructionState& st = guarded_toy();
  for (std::size_t i = 1; i < st.N(); ++i) {
    const auto a = enclose_u(st, i), b = enclose_u(st, i + 1);
    EXPECT_LT(b.radius_ub, a.radius_ub);
    // x_{i-1} and x_i both lie in the plane of u_i
    EXPECT_EQ(dot(a.rep, st.x[i - 1]), 0);
    EXPECT_EQ(dot(a.rep, st.x[i]), 0);
  }
  const auto V = enclose_vw(st, DirectionKind::V), W = enclose_vw(st, DirectionKind::W);
  EXPECT_EQ(V.anchor_index % 2, 1u);
  EXPECT_EQ(W.anchor_index % 2, 0u);
  EXPECT_EQ(V.anchor_index, 5u);
  EXPECT_EQ(W.anchor_index, 4u);
  // The V limit is within reach of every earlier odd anchor.
  const auto V3 = enclose_vw_at(st, 3);
  EXPECT_TRUE(check_le("", proj_dist(V3.rep, V.rep), Real::rational(V3.radius_ub + V.radius_ub)).passed());
  EXPECT_THROW(enclose_u(st, 0), std::out_of_range);
  EXPECT_THROW(enclose_vw(st, DirectionKind::U), std::invalid_argument);
}
