#include "signcert/builder/build.hpp"

namespace signcert {

namespace {

Real num(long v) { return Real::from_long(v); }
Real rat(const Rat& q) { return Real::rational(q); }

Int ceil_upper(const Real& x) {
  const Interval e = x.enclose(128);
  Int r;
  mpfr_get_z(r.get_mpz_t(), e.hi().get(), MPFR_RNDU);
  return r;
}

// Steps use Y = X_i^gamma; X_1 is only known through its square.
YSpec y_for(const Schedule& s, std::size_t i) {
  if (i >= 2) return PowGamma{s.X_int(i)};
  return SqrtPowGamma{s.X_sq[i]};
}

// <a, b> and <b, c> are saturated (divisors 1, 1) and a, b, c are
// independent, so the intersection is a saturated rank-1 lattice containing
// b, i.e. Z b when b is primitive.
Check intersection_check(const IVec3& a, const IVec3& b, const IVec3& c) {
  const auto ab = elementary_divisors({a, b});
  const auto bc = elementary_divisors({b, c});
  const auto abc = elementary_divisors({a, b, c});
  const auto bb = elementary_divisors({b});
  const bool ok = ab == std::vector<Int>{1, 1} && bc == std::vector<Int>{1, 1} && abc.size() == 3 &&
                  abc[2] != 0 && bb == std::vector<Int>{1};
  auto str = [](const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].get_str();
    return s + ")";
  };
  return check_true("<x_{i-1}, x_i> cap <x_i, x_{i+1}> = Z x_i", ok,
                    "divisors " + str(ab) + " " + str(bc) + " " + str(abc) + " " + str(bb),
                    "(1,1) (1,1) (1,1,nonzero) (1)");
}

}  // namespace

Rat upper_rat(const Real& x, mpfr_prec_t prec) {
  if (x.exact()) return *x.exact();
  return x.enclose(prec).hi_rat();
}

Real ConstructionState::delta(std::size_t i) const {
  const Real d0 = plan.delta0();
  if (i == 0) return d0;
  const Real C1 = rat(plan.C1), g = Real::golden_ratio();
  const Real Xi = X(i);
  return num(5) * C1 * Xi / (num(2) * X(i + 1)) + num(2) * C1 / (d0 * X(i - 1) * pow(Xi, g + num(1)));
}

bool ConstructionState::ok() const {
  for (const auto& s : steps)
    if (!s.cert.ok()) return false;
  return combine(checks) == Status::Pass;
}

ConstructionState build(const Plan& plan, const Schedule& schedule, const BuildOptions& opt) {
  const std::size_t N = plan.N_steps;
  if (N < 2) throw PlanError("build needs N >= 2");
  if (schedule.size() < N + 3) throw PlanError("schedule shorter than X_{N+2}");
  if (!is_primitive_pair(plan.x0, plan.x1)) throw PlanError("(x0, x1) is not a primitive pair");

  ConstructionState st;
  st.plan = plan;
  st.schedule = schedule;
  st.x = {plan.x0, plan.x1};
  st.y.resize(1);

  // Convergents must reach past every 2 X_{i+1} / X_i^gamma.
  Int bound = 2;
  for (std::size_t i = 1; i + 1 <= N; ++i) {
    const Int b = ceil_upper(num(2) * schedule.X(i + 1) / y_value(y_for(schedule, i))) + 1;
    if (b > bound) bound = b;
  }
  st.table = convergents_until(plan.alpha, bound, plan.C1);

  auto record = [&](Check c, const std::string& id, std::size_t i) {
    c = tagged(std::move(c), id, static_cast<int>(i));
    st.checks.push_back(c);
    if (opt.strict_ledger && !c.passed()) throw BuildError(c, i);
  };

  for (std::size_t i = 1; i < N; ++i) {
    StepRecord r;
    r.i = i;
    r.input = StepInput{st.x[i - 1], st.x[i], y_for(schedule, i), schedule.X_int(i + 1), &st.table, opt.max_prec};
    try {
      auto [out, cert] = recursive_step(r.input);
      r.out = std::move(out);
      r.cert = std::move(cert);
    } catch (const StepError& e) {
      throw BuildError(e.check(), i);
    }
    r.input.table = nullptr;  // points into st, which moves
    st.x.push_back(r.out.x_prime);
    st.y.push_back(r.out.y);
    st.steps.push_back(std::move(r));
  }

  // delta ledger
  const Real d0 = plan.delta0();
  for (std::size_t i = 0; i <= N + 1; ++i) st.delta_ub.push_back(upper_rat(st.delta(i)));
  const Rat d01 = proj_dist_sq(plan.x0, plan.x1).value;
  record(check_true("dist(x0, x1)^2 = 4 delta0^2", d01 == 4 * plan.delta0_sq, d01.get_str(),
                    Rat(4 * plan.delta0_sq).get_str()),
         "delta0.definition", 1);
  for (std::size_t i = 1; i <= N + 1; ++i)
    record(check_le("delta_i <= delta_{i-1}/2", st.delta(i), st.delta(i - 1) / num(2), opt.max_prec), "delta.halving", i);
  for (std::size_t i = 1; i + 1 <= N; ++i)
    record(check_le("dist(x_{i-1}, x_{i+1}) <= delta_i", proj_dist(st.x[i - 1], st.x[i + 1]), st.delta(i), opt.max_prec),
           "delta.step_dist", i);
  for (std::size_t i = 1; i <= N; ++i) {
    const Real dist = proj_dist(st.x[i - 1], st.x[i]);
    if (i == 1) {
      record(check_ge("dist(x_{i-1}, x_i) >= delta0 + delta_{i-1}", rat(proj_dist_sq(st.x[0], st.x[1]).value),
                      rat(4 * plan.delta0_sq), opt.max_prec),
             "delta.separation", i);
    } else {
      record(check_ge("dist(x_{i-1}, x_i) >= delta0 + delta_{i-1}", dist, d0 + st.delta(i - 1), opt.max_prec),
             "delta.separation", i);
    }
    record(check_ge("dist(x_{i-1}, x_i) >= delta0", dist, d0, opt.max_prec), "part3.separation", i);
  }
  for (std::size_t i = 1; i + 1 <= N; ++i) record(intersection_check(st.x[i - 1], st.x[i], st.x[i + 1]), "intersection", i);

  // Enclosure consistency.
  for (std::size_t i = 1; i + 1 <= N; ++i) {
    const DirectionEnclosure a = enclose_u(st, i), b = enclose_u(st, i + 1);
    record(check_le("dist(u_i, u_{i+1}) <= r_i + r_{i+1}", proj_dist(a.rep, b.rep), rat(a.radius_ub + b.radius_ub),
                    opt.max_prec),
           "u.overlap", i);
    record(check_true("r_{i+1} < r_i", b.radius_ub < a.radius_ub), "u.shrinks", i);
  }
  if (N >= 3) {
    const DirectionEnclosure V = enclose_vw(st, DirectionKind::V), W = enclose_vw(st, DirectionKind::W);
    record(check_le("dist(x0, w) <= delta0", proj_dist(plan.x0, W.rep), d0 + rat(W.radius_ub), opt.max_prec),
           "w.near_x0", 0);
    record(check_le("dist(x0, v) <= 3 delta0", proj_dist(plan.x0, V.rep), num(3) * d0 + rat(V.radius_ub), opt.max_prec),
           "v.near_x0", 0);
    record(check_gt("V and W enclosures disjoint", proj_dist(V.rep, W.rep), rat(V.radius_ub + W.radius_ub), opt.max_prec),
           "vw.disjoint", 0);
  }
  return st;
}

std::string to_string(DirectionKind k) {
  switch (k) {
    case DirectionKind::U: return "U";
    case DirectionKind::V: return "V";
    case DirectionKind::W: return "W";
  }
  return "?";
}

DirectionEnclosure enclose_u(const ConstructionState& s, std::size_t i) {
  if (i < 1 || i > s.N()) throw std::out_of_range("enclose_u: index outside 1..N");
  DirectionEnclosure e;
  e.kind = DirectionKind::U;
  e.anchor_index = i;
  // Normals are sign-aligned along the sequence.
  IVec3 rep = cross(s.x[0], s.x[1]);
  for (std::size_t j = 2; j <= i; ++j) {
    IVec3 next = cross(s.x[j - 1], s.x[j]);
    if (dot(next, rep) < 0) next = -next;
    rep = std::move(next);
  }
  e.rep = std::move(rep);
  const Real g = Real::golden_ratio();
  const Real r = rat(4 * s.plan.C1) / (rat(s.plan.delta0_sq) * s.X(i - 1) * pow(s.X(i), g + num(1)));
  e.radius_ub = upper_rat(r);
  e.radius_sq_ub = e.radius_ub * e.radius_ub;
  return e;
}

DirectionEnclosure enclose_vw_at(const ConstructionState& s, std::size_t k) {
  if (k > s.N()) throw std::out_of_range("enclose_vw_at: anchor beyond x_N");
  DirectionEnclosure e;
  e.kind = k % 2 == 1 ? DirectionKind::V : DirectionKind::W;
  e.anchor_index = k;
  e.rep = s.x[k];
  // dist(x_k, limit) <= sum_j delta_{k+1+2j} <= 2 delta_{k+1}
  e.radius_ub = 2 * s.delta_ub.at(k + 1);
  e.radius_sq_ub = e.radius_ub * e.radius_ub;
  return e;
}

DirectionEnclosure enclose_vw(const ConstructionState& s, DirectionKind kind) {
  if (kind == DirectionKind::U) throw std::invalid_argument("enclose_vw: kind must be V or W");
  if (s.N() < 3) throw std::invalid_argument("enclose_vw: needs at least 3 steps");
  std::size_t k = s.N();
  if ((kind == DirectionKind::V) != (k % 2 == 1)) --k;
  return enclose_vw_at(s, k);
}

Real x_dot_u_lower(const IVec3& x, const DirectionEnclosure& u) {
  const Real c = abs(Real::integer(dot(x, u.rep))) / norm(u.rep);
  return u.radius_ub == 0 ? c : c - num(2) * norm(x) * rat(u.radius_ub);
}

Real x_dot_u_upper(const IVec3& x, const DirectionEnclosure& u) {
  const Real c = abs(Real::integer(dot(x, u.rep))) / norm(u.rep);
  return u.radius_ub == 0 ? c : c + num(2) * norm(x) * rat(u.radius_ub);
}

Real dist_upper(const IVec3& x, const DirectionEnclosure& e) { return proj_dist(x, e.rep) + rat(e.radius_ub); }

Real dist_lower(const IVec3& x, const DirectionEnclosure& e) {
  return max(proj_dist(x, e.rep) - rat(e.radius_ub), Real());
}

}  // namespace signcert
