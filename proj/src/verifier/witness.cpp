#include "signcert/verifier/verifier.hpp"

namespace signcert {

namespace {

Real num(long v) { return Real::from_long(v); }
Real rat(const Rat& q) { return Real::rational(q); }

}  // namespace

Status WitnessReport::status() const {
  Status s = Status::Pass;
  for (const auto& w : samples) {
    const Status t = combine(w.checks);
    if (t == Status::Fail) return Status::Fail;
    if (t == Status::Undecided) s = Status::Undecided;
  }
  return s;
}

std::vector<Real> witness_grid(const ConstructionState& st, std::size_t count) {
  const std::size_t N = st.N();
  const Real five_c1 = num(5) * rat(st.plan.C1);
  const Real X0 = st.X(0), XN = st.X(N);
  std::vector<Real> out;
  out.push_back(five_c1 * X0);
  for (std::size_t k = 1; k < count; ++k) {
    const Rat t(static_cast<long>(k), static_cast<long>(count));
    out.push_back(five_c1 * pow(X0, rat(1 - t)) * pow(XN, rat(t)));
  }
  return out;
}

WitnessReport check_condition_iii(const ConstructionState& st, const std::vector<Real>& X_samples, const Real& C,
                                  mpfr_prec_t mp) {
  const std::size_t N = st.N();
  if (N < 3) throw std::invalid_argument("check_condition_iii: needs N >= 3");
  const Real C1 = rat(st.plan.C1), g = Real::golden_ratio(), one = num(1);
  const Real five_c1 = num(5) * C1;
  const DirectionEnclosure V = enclose_vw(st, DirectionKind::V), W = enclose_vw(st, DirectionKind::W);
  WitnessReport rep;
  rep.C = describe(C);
  for (std::size_t k = 0; k < X_samples.size(); ++k) {
    const Real& X = X_samples[k];
    WitnessSample s;
    s.k = k;
    s.X = describe(X);
    for (std::size_t i = 1; i <= N && !s.i; ++i) {
      const auto lo = certified_compare(five_c1 * st.X(i - 1), X, mp).order;
      const auto hi = certified_compare(X, five_c1 * st.X(i), mp).order;
      if ((lo == Ordering::Less || lo == Ordering::Equal) && hi == Ordering::Less) s.i = i;
    }
    if (!s.i) {
      s.checks.push_back(tagged(check_true("5C1 X_{i-1} <= X < 5C1 X_i for some 1 <= i <= N", false, s.X),
                                "witness.index"));
      rep.samples.push_back(std::move(s));
      continue;
    }
    const std::size_t i = s.i;
    s.witness = st.x[i - 1];
    const IVec3& x = s.witness;
    const DirectionEnclosure U = enclose_u(st, i);
    const Real nx = norm(x);
    const Real bound = C / pow(X, g + one);
    s.checks.push_back(tagged(check_le("|x_{i-1}| <= X", nx, X, mp), "witness.norm", int(i)));
    s.checks.push_back(tagged(check_eq("x_{i-1} . u_i = 0", dot(x, U.rep), Int(0)), "witness.orth", int(i)));
    s.checks.push_back(
        tagged(check_le("|x_{i-1}.u| <= 2|x_{i-1}| r_i <= C/X^(gamma+1)", num(2) * nx * rat(U.radius_ub), bound, mp),
               "witness.u", int(i)));
    const Real d = min(dist_upper(x, V), dist_upper(x, W));
    s.checks.push_back(
        tagged(check_le("min |x.perp| <= |x| dist(x,{v,w}) <= C/X^(gamma+1)", nx * d, bound, mp), "witness.vw", int(i)));
    s.checks.push_back(tagged(check_le("dist(x_{i-1},{v,w}) <= 9C1/(delta0 X_{i-1} X_i^(gamma+1))", d,
                                       num(9) * C1 / (st.plan.delta0() * st.X(i - 1) * pow(st.X(i), g + one)), mp),
                              "witness.dist", int(i)));
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

WitnessReport check_condition_iii(const ConstructionState& st, mpfr_prec_t mp) {
  return check_condition_iii(st, witness_grid(st, 32), threshold_constants(st.plan).C4, mp);
}

}  // namespace signcert
