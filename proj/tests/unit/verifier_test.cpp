#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <random>

#include "signcert/verifier/slab.hpp"
#include "signcert/verifier/slab_kernel.hpp"
#include "signcert/verifier/verifier.hpp"

using namespace signcert;

namespace {

PlanInput guarded_input() {
  PlanInput in;
  in.delta = Rat(3, 2);
  in.toy = true;
  in.steps = 5;
  in.multiplier = Int(5);
  return in;
}

const ConstructionState& guarded_toy() {
  static const ConstructionState st = [] {
    const PlanResult r = make_plan(guarded_input());
    return build(r.plan, r.schedule);
  }();
  return st;
}

IVec3 e(int k) { return IVec3::unit(k); }

// Report fields that must not depend on threads or instruction set.
std::string fingerprint(const ScanReport& r) {
  std::string s = r.C_prime + "|" + r.B + "|" + r.n2_min.get_str() + "|" + r.n2_max.get_str() + "|" +
                  std::to_string(r.lines) + "|" + std::to_string(r.candidates) + "|" +
                  std::to_string(r.fast_passed) + "|" + std::to_string(r.exact_passed) + "|" +
                  std::to_string(r.violations.size()) + "|" + std::to_string(r.undecided.size()) + "|" +
                  r.min_lower_at.to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "|%a", r.min_lower);
  return s + buf;
}

}  // namespace

TEST(Vperp, TightExample) {
  const VperpResult r = vperp_sandwich_check(e(2), e(0), e(1), IVec3(3, 4, 0));
  EXPECT_EQ(r.Av_sq, 16);
  EXPECT_EQ(r.Aw_sq, 9);
  EXPECT_EQ(r.Bv_sq, 16);
  EXPECT_EQ(r.Bw_sq, 9);
  EXPECT_EQ(r.a_sq, 0);
  EXPECT_EQ(r.status(), Status::Pass);
}

TEST(Vperp, XEqualsV) {
  const VperpResult r = vperp_sandwich_check(e(2), e(0), e(1), e(0));
  EXPECT_EQ(r.Av_sq, 0);
  EXPECT_EQ(r.Bv_sq, 0);
  EXPECT_EQ(r.a_sq, 0);
  EXPECT_EQ(r.status(), Status::Pass);
}

TEST(Vperp, ScaledNonOrthogonalFrame) {
  // u = e3, v and w in the horizontal plane at 45 degrees, all scaled.
  const VperpResult r = vperp_sandwich_check(IVec3(0, 0, 7), IVec3(2, 0, 0), IVec3(3, 3, 0), IVec3(1, 2, 5));
  EXPECT_EQ(r.a_sq, 25);
  EXPECT_EQ(r.Av_sq, 4);
  EXPECT_EQ(r.Aw_sq, Rat(1, 2));
  EXPECT_EQ(r.status(), Status::Pass);
  EXPECT_THROW(vperp_sandwich_check(e(2), IVec3(1, 0, 1), e(1), e(0)), std::invalid_argument);
}

TEST(Export, ZeroRadiusRep) {
  DirectionEnclosure u;
  u.rep = IVec3(2, 1, 1);
  const AlphaBeta ab = export_alpha_beta(u);
  EXPECT_TRUE(ab.alpha.is_point());
  EXPECT_TRUE(ab.alpha.contains(Rat(1, 2)));
  EXPECT_TRUE(ab.beta.contains(Rat(1, 2)));
  u.rep = IVec3(-2, -1, -1);
  EXPECT_TRUE(export_alpha_beta(u).alpha.contains(Rat(1, 2)));
}

TEST(Export, IntervalsShrinkAndContainRepRatio) {
  const ConstructionState& st = guarded_toy();
  Rat prev_width = -1;
  for (std::size_t a = 3; a <= st.N(); ++a) {
    const DirectionEnclosure u = enclose_u(st, a);
    const AlphaBeta ab = export_alpha_beta(u);
    Rat ra(u.rep[1], u.rep[0]), rb(u.rep[2], u.rep[0]);
    ra.canonicalize();
    rb.canonicalize();
    EXPECT_TRUE(ab.alpha.contains(ra));
    EXPECT_TRUE(ab.beta.contains(rb));
    const Rat w = ab.alpha.hi_rat() - ab.alpha.lo_rat();
    if (prev_width >= 0) EXPECT_LT(w, prev_width);
    prev_width = w;
  }
  DirectionEnclosure bad;
  bad.rep = IVec3(0, 1, 1);
  bad.radius_ub = Rat(1, 10);
  EXPECT_THROW(export_alpha_beta(bad), std::domain_error);
}

TEST(Witness, GridAndSelectionRule) {
  const ConstructionState& st = guarded_toy();
  const auto grid = witness_grid(st, 32);
  ASSERT_EQ(grid.size(), 32u);
  ASSERT_TRUE(grid[0].is_exact());
  EXPECT_EQ(*grid[0].exact(), 5 * st.plan.C1);  // X0 = 1
  const WitnessReport r = check_condition_iii(st);
  ASSERT_EQ(r.samples.size(), 32u);
  EXPECT_EQ(r.status(), Status::Pass);
  EXPECT_EQ(r.samples[0].i, 1u);
  EXPECT_EQ(r.samples[0].witness, st.plan.x0);
  std::size_t prev = 0;
  for (const auto& s : r.samples) {
    EXPECT_GE(s.i, prev);
    prev = s.i;
    EXPECT_EQ(s.witness, st.x[s.i - 1]);
  }
  EXPECT_EQ(prev, st.N());
}

TEST(Witness, TooSmallConstantFails) {
  const ConstructionState& st = guarded_toy();
  const WitnessReport r = check_condition_iii(st, witness_grid(st, 4), Real::rational(Rat(1, 1000000)));
  EXPECT_EQ(r.status(), Status::Fail);
}

TEST(Box, BranchesAndIdentities) {
  const ConstructionState& st = guarded_toy();
  const BoxReport r = coeff_box(st, 2, 8, 2);
  EXPECT_EQ(r.status(), Status::Pass);
  EXPECT_EQ(r.enumerated, 17u * 17u * 17u - 1u);
  EXPECT_EQ(r.identities, 2 * r.enumerated);
  EXPECT_EQ(r.passed, r.in_range);
  // every q != 0 point and every multiple r x_2 is in range; x_1 alone is not
  EXPECT_EQ(r.branch_count[0], 16u * 17u * 17u);
  EXPECT_EQ(r.branch_count[2], 16u);
  EXPECT_THROW(coeff_box(st, 1), std::invalid_argument);
  EXPECT_THROW(coeff_box(st, st.N() - 1), std::invalid_argument);
}

TEST(Box, SingleCoefficientExamples) {
  const ConstructionState& st = guarded_toy();
  const std::size_t i = 2;
  // (1,0,0): x = y_i is off the plane <x_{i-1}, x_i>
  EXPECT_EQ(det3(st.y[i], st.x[i - 1], st.x[i]), 1);
  // multilinearity on random coefficients
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int t = 0; t < 50; ++t) {
    const long q = d(rng), p = d(rng), r = d(rng);
    const IVec3 x = Int(q) * st.y[i] + Int(p) * st.x[i - 1] + Int(r) * st.x[i];
    EXPECT_EQ(det3(x, st.x[i - 1], st.x[i]), q);
  }
}

TEST(Box, ThreadCountDoesNotChangeTheReport) {
  const ConstructionState& st = guarded_toy();
  const BoxReport a = coeff_box(st, 3, 3, 1), b = coeff_box(st, 3, 3, 4);
  EXPECT_EQ(a.in_range, b.in_range);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.anchor_used, b.anchor_used);
}

TEST(Ledger, ToyFixtureNamesFailingClauses) {
  const ConstructionState& st = guarded_toy();
  const StarredLedger L = starred_ledger_audit(st);
  EXPECT_FALSE(L.clean());
  const std::vector<std::string> expected = {
      "x1_ge_12c1_gamma",  "moderate_q.q_below_qn", "moderate_q.final",  "in_plane.final",
      "moderate_q.half[1]", "multiple.final[1]",    "moderate_q.half[2]", "multiple.norm[3]",
      "multiple.norm[4]",  "multiple.norm[5]",     "multiple.norm[6]"};
  EXPECT_EQ(L.failing(), expected);
}

TEST(Ledger, CaseTwoClauseMatchesItsClosedForm) {
  // (C2/2X1) q_n < q_n  <=>  X1 > C2/2
  const ConstructionState& st = guarded_toy();
  const StarredLedger L = starred_ledger_audit(st);
  const auto it = std::find_if(L.clauses.begin(), L.clauses.end(),
                               [](const Check& c) { return c.id == "moderate_q.q_below_qn"; });
  ASSERT_NE(it, L.clauses.end());
  const Rat C2 = 512 * st.plan.C1 * st.plan.C1 * st.plan.C1 / st.plan.delta0_sq;
  const bool closed_form = Rat(norm_sq(st.plan.x1)) >= C2 * C2 / 4;
  EXPECT_EQ(it->passed(), closed_form);
}

TEST(SlabPoint, MultiplesPassAndX0IsNonVacuous) {
  const ConstructionState& st = guarded_toy();
  for (long r : {700L, 1000L, 1290L}) {
    double lo = 0;
    const Check c = certify_iv_point(st, Int(r) * st.x[1], 512, &lo);
    EXPECT_EQ(c.status, Status::Pass) << r;
    EXPECT_GT(lo, 0);
  }
  // |x0| = 1 lies far below C': (iv) genuinely fails there, yet |x0.u| > 0.
  double lo = 0;
  EXPECT_EQ(certify_iv_point(st, st.x[0], 512, &lo).status, Status::Fail);
  EXPECT_GT(lo, 0);
}

TEST(Slab, BelowThreshold) {
  SlabOptions o;
  o.B = 100;
  const ScanReport r = slab_scan_iv(guarded_toy(), o);
  EXPECT_TRUE(r.below_threshold);
  EXPECT_EQ(r.lines, 0u);
  EXPECT_EQ(r.status(), Status::Pass);
}

TEST(Slab, GuardFailsForPsiTooSmall) {
  ConstructionState st = guarded_toy();
  st.plan.psi.c = Rat(1, Int(1) << 80);
  SlabOptions o;
  o.B = 4600;
  const ScanReport r = slab_scan_iv(st, o);
  EXPECT_EQ(r.guard.status, Status::Fail);
  EXPECT_EQ(r.status(), Status::Undecided);
}

TEST(Slab, NarrowShellIsCleanAndDeterministic) {
  SlabOptions o;
  o.B = 4700;
  o.isa = simd::Isa::Avx2;
  const ScanReport a = slab_scan_iv(guarded_toy(), o);
  EXPECT_TRUE(a.guard.passed());
  EXPECT_EQ(a.status(), Status::Pass);
  EXPECT_GT(a.candidates, 1000000u);
  EXPECT_TRUE(a.violations.empty());
  EXPECT_TRUE(a.undecided.empty());
  EXPECT_TRUE(a.all_lower_positive);
  o.isa = simd::Isa::Scalar;
  o.threads = 3;
  const ScanReport b = slab_scan_iv(guarded_toy(), o);
  EXPECT_EQ(fingerprint(a), fingerprint(b));
}

TEST(SlabKernel, ScalarAndAvx2AreBitIdentical) {
  const ConstructionState& st = guarded_toy();
  // small anchors keep the representatives inside double range
  const auto U = enclose_u(st, 3);
  kernels::SlabFilterParams P;
  const double n = std::sqrt(static_cast<double>(norm_sq(U.rep).get_d()));
  const auto V = enclose_vw_at(st, 3), W = enclose_vw_at(st, 2);
  const double nv = std::sqrt(norm_sq(V.rep).get_d()), nw = std::sqrt(norm_sq(W.rep).get_d());
  for (int j = 0; j < 3; ++j) {
    P.u[j] = U.rep[j].get_d() / n;
    P.v[j] = V.rep[j].get_d() / nv;
    P.w[j] = W.rep[j].get_d() / nw;
  }
  P.u_slack = 1e-12;
  P.v_slack = 1e-9;
  P.w_slack = 2e-9;
  std::vector<double> F(64);
  for (std::size_t b = 0; b < F.size(); ++b) F[b] = 1e-3 * (1 + static_cast<double>(b) / 64);
  P.F = F.data();
  P.n2_min = 1e6;
  P.bucket_scale = 64 / 1e8;
  P.buckets = 64;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-9000, 9000);
  const std::size_t N = 1003;
  std::vector<double> x(N), y(N), z(N);
  for (std::size_t j = 0; j < N; ++j) {
    x[j] = static_cast<double>(d(rng));
    y[j] = static_cast<double>(d(rng));
    // half of the points near the plane so both outcomes occur
    z[j] = j % 2 ? static_cast<double>(d(rng)) : std::round(-(P.u[0] * x[j] + P.u[1] * y[j]) / P.u[2]);
  }
  std::vector<std::uint8_t> pa(N), pb(N);
  std::vector<double> la(N), lb(N);
  kernels::slab_filter_scalar(P, x.data(), y.data(), z.data(), N, pa.data(), la.data());
  kernels::slab_filter_avx2(P, x.data(), y.data(), z.data(), N, pb.data(), lb.data());
  EXPECT_EQ(pa, pb);
  EXPECT_EQ(0, std::memcmp(la.data(), lb.data(), N * sizeof(double)));
  const auto passes = std::count(pa.begin(), pa.end(), 1);
  EXPECT_GT(passes, 0);
  EXPECT_LT(passes, static_cast<long>(N));
}

TEST(SlabKernel, FastPassesAgreeWithExactDecision) {
  // Points the double filter accepts must also pass the exact path.
  const ConstructionState& st = guarded_toy();
  SlabOptions o;
  o.B = 4620;
  const ScanReport r = slab_scan_iv(st, o);
  ASSERT_EQ(r.status(), Status::Pass);
  ASSERT_GT(r.fast_passed, 0u);
  double lo = 0;
  const Check c = certify_iv_point(st, r.min_lower_at, 1024, &lo);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_LE(r.min_lower, lo);
}

TEST(Properties, DeterministicAcrossThreadCounts) {
  const PropertyReport a = property_suites(2024, 1000, 1);
  const PropertyReport b = property_suites(2024, 1000, 4);
  EXPECT_TRUE(a.ok()) << a.to_text();
  EXPECT_EQ(a.to_text(), b.to_text());
  for (const auto& s : a.suites) EXPECT_GT(s.cases, 0u);
  EXPECT_EQ(a.suites[0].cases, 1000u);
}
