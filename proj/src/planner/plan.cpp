#include "signcert/planner/plan.hpp"

#include <array>

namespace signcert {

namespace {

Real gamma_r() { return Real::golden_ratio(); }
Real rat(const Rat& q) { return Real::rational(q); }
Real num(long v) { return Real::from_long(v); }

Int pow2(long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

Real PsiSpec::operator()(const Real& t) const { return rat(c) * pow(t, rat(e)); }

std::string PsiSpec::to_string() const { return c.get_str() + " t^" + e.get_str(); }

void PsiSpec::validate() const {
  if (c <= 0 || e <= 0) throw PlanError("psi needs c > 0 and e > 0");
}

Real Schedule::X(std::size_t i) const {
  if (i >= X_sq.size()) throw PlanError("schedule index out of range");
  if (i >= 2) return Real::integer(pow2(log2X[i]));
  return Real::sqrt_of(X_sq[i]);
}

Int Schedule::X_int(std::size_t i) const {
  if (i < 2 || i >= X_sq.size()) throw PlanError("X_int needs 2 <= i < size");
  return pow2(log2X[i]);
}

Companion choose_companion(const IVec3& x0, const Rat& delta) {
  if (!is_primitive_point(x0)) throw PlanError("x0 is not primitive");
  if (delta <= 0) throw PlanError("delta must be positive");

  // First vector of a fixed enumeration completing x0 to a primitive pair.
  std::optional<IVec3> v;
  const std::array<IVec3, 3> units{IVec3(1, 0, 0), IVec3(0, 1, 0), IVec3(0, 0, 1)};
  for (const auto& e : units)
    if (is_primitive_pair(x0, e)) {
      v = e;
      break;
    }
  for (long r = 1; !v && r <= 4; ++r)
    for (long a = -r; a <= r && !v; ++a)
      for (long b = -r; b <= r && !v; ++b)
        for (long c = -r; c <= r && !v; ++c) {
          IVec3 t(a, b, c);
          if (is_primitive_pair(x0, t)) v = t;
        }
  if (!v) throw std::logic_error("choose_companion: no partner found");

  Companion out;
  out.base = complete_to_basis(x0, *v);

  // dist^2(x0, base + m x0) = H / (S0 |base + m x0|^2) since the cross
  // product does not depend on m; want this <= delta^2 / 4.
  const Int S0 = norm_sq(x0);
  const Int H = norm_sq(cross(x0, out.base));
  const Int B = dot(out.base, x0);
  const Int nb = norm_sq(out.base);
  const Rat target = Rat(4 * H) / (delta * delta * S0);
  auto ok = [&](const Int& m) { return Rat(S0 * m * m + 2 * B * m + nb) >= target; };

  Int m = 0;
  if (!ok(m)) {
    // Positive root of S0 m^2 + 2 B m + nb - target, then exact adjustment.
    const Rat disc = Rat(B * B) - Rat(S0) * (Rat(nb) - target);
    Int root;
    const Int fd = floor_rat(disc);
    mpz_sqrt(root.get_mpz_t(), fd.get_mpz_t());
    m = floor_rat(Rat(-B + root, S0));
    if (m < 0) m = 0;
    while (m > 0 && ok(m - 1)) --m;
    while (!ok(m)) ++m;
  }
  out.shift = m;
  out.companion = out.base + m * x0;
  out.third = complete_to_basis(x0, out.companion);
  return out;
}

Rat default_theta(const Rat& C1) {
  const Rat e = 8 * C1;
  return 2 * e * e * e;
}

Plan plan_for_multiplier(const PlanInput& in, const Companion& comp, const Int& n) {
  if (n < 1) throw PlanError("multiplier must be >= 1");
  Plan p;
  p.alpha = in.alpha;
  p.C1 = in.C1;
  p.delta = in.delta;
  p.x0 = in.x0;
  p.x0_base = comp.base;
  p.x0_companion = comp.companion;
  p.companion_shift = comp.shift;
  p.x0_third = comp.third;
  p.multiplier = n;
  p.x1 = n * comp.companion + comp.third;
  p.delta0_sq = proj_dist_sq(p.x0, p.x1).value / 4;
  p.theta = in.theta ? *in.theta : default_theta(in.C1);
  p.psi = in.psi;
  p.N_steps = in.steps;
  p.toy = in.toy;

  const Int S0 = norm_sq(p.x0), S1 = norm_sq(p.x1);
  const Real X0 = p.X0(), X1 = p.X1(), d0 = p.delta0(), C1 = rat(p.C1), g = gamma_r();
  const mpfr_prec_t mp = in.max_prec;
  auto& cs = p.checks;

  cs.push_back(tagged(check_true("X1 >= 5 X0", S1 >= 25 * S0, "X1^2 = " + S1.get_str(), "25 X0^2 = " + Int(25 * S0).get_str()),
                      "x1_ge_5x0"));
  cs.push_back(tagged(check_true("3 delta0 <= delta", 9 * p.delta0_sq <= p.delta * p.delta,
                                 "9 delta0^2 = " + Rat(9 * p.delta0_sq).get_str(),
                                 "delta^2 = " + Rat(p.delta * p.delta).get_str()),
                      "delta0_le_delta_over_3"));
  cs.push_back(tagged(check_le("2(X0 + X1) <= X1^gamma", num(2) * (X0 + X1), pow(X1, g), mp), "first_step_room"));
  if (!p.toy) {
    cs.push_back(tagged(check_ge("X1 >= (12 C1)^gamma", X1, pow(num(12) * C1, g), mp), "x1_ge_12c1_gamma"));
    cs.push_back(tagged(check_ge("delta0^2 X1 >= theta", rat(p.delta0_sq) * X1, rat(p.theta), mp), "theta"));
    // Left side decreases in X2, so X2 = X1^gamma is the worst case.
    const Real lhs = num(5) * C1 * pow(X1, num(1) - g) + num(4) * C1 / (d0 * X0 * pow(X1, g + num(1)));
    cs.push_back(tagged(check_le("5C1 X1/X2 + 4C1/(delta0 X0 X1^(gamma+1)) <= delta0 for all X2 >= X1^gamma", lhs, d0, mp),
                        "first_delta_tail"));
  }
  return p;
}

namespace {

// Enclosure of log2 X_i.
Interval log2_X(const Schedule& s, std::size_t i, mpfr_prec_t prec) {
  if (i >= 2) return Interval::from_int(Int(s.log2X[i]), prec);
  Interval l = log2(Interval::from_int(s.X_sq[i], prec));
  return l * Interval::from_rat(Rat(1, 2), prec);
}

long floor_lo(const Interval& x) {
  Mpfr f(x.prec());
  mpfr_floor(f.get(), x.lo().get());
  return mpfr_get_si(f.get(), MPFR_RNDD);
}

}  // namespace

Schedule schedule_X(const Plan& plan, mpfr_prec_t max_prec) {
  if (plan.N_steps < 2) throw PlanError("need at least 2 steps");
  plan.psi.validate();
  const std::size_t last = plan.N_steps + 2;
  Schedule s;
  s.X_sq = {norm_sq(plan.x0), norm_sq(plan.x1)};
  s.log2X = {-1, -1};
  s.rule = {"|x0|", "|x1|"};
  const Real g = gamma_r(), C1 = rat(plan.C1);
  const Real X1 = plan.X1();
  const mpfr_prec_t prec = 256;

  for (std::size_t j = 2; j <= last; ++j) {
    // X_j >= X_{j-2} X_{j-1}^(gamma+2) and psi(X_j / X1) >= X1^3 X_{j-1}.
    const Interval gi = golden_ratio(prec);
    const Interval two = Interval::from_int(Int(2), prec);
    const Interval growth = log2_X(s, j - 2, prec) + (gi + two) * log2_X(s, j - 1, prec);
    const Interval l1 = log2_X(s, 1, prec);
    const Interval three = Interval::from_int(Int(3), prec);
    const Interval psi_lb = l1 + (three * l1 + log2_X(s, j - 1, prec) - log2(Interval::from_rat(plan.psi.c, prec))) /
                                     Interval::from_rat(plan.psi.e, prec);
    long k = std::max<long>(0, std::max(floor_lo(growth), floor_lo(psi_lb)));
    const Real prev2 = s.X(j - 2), prev1 = s.X(j - 1);
    for (;; ++k) {
      const Real Xj = Real::integer(pow2(k));
      const Check a = check_ge("growth", Xj, prev2 * pow(prev1, g + num(2)), max_prec);
      if (!a.passed()) continue;
      const Check b = check_ge("psi", plan.psi(Xj / X1), X1 * X1 * X1 * prev1, max_prec);
      if (!b.passed()) continue;
      break;
    }
    const bool growth_binds = floor_lo(growth) >= floor_lo(psi_lb);
    s.X_sq.push_back(pow2(2 * k));
    s.log2X.push_back(k);
    s.rule.push_back(growth_binds ? "X_{i-1} X_i^(gamma+2)" : "psi(X_{i+1}/X1) >= X1^3 X_i");
  }

  // Re-verify every invariant independently of the search above.
  auto& cs = s.checks;
  for (std::size_t i = 1; i <= last; ++i) {
    const int ii = static_cast<int>(i);
    const Real Xi = s.X(i);
    cs.push_back(tagged(check_le("12 C1 X_i <= X_i^gamma", num(12) * C1 * Xi, pow(Xi, g), max_prec), "sched.12c1", ii));
    if (i + 1 > last) continue;
    const Real Xn = s.X(i + 1);
    cs.push_back(tagged(check_le("X_i^gamma <= X_{i+1}", pow(Xi, g), Xn, max_prec), "sched.gamma_step", ii));
    cs.push_back(tagged(check_ge("X_{i+1} >= X_{i-1} X_i^(gamma+2)", Xn, s.X(i - 1) * pow(Xi, g + num(2)), max_prec),
                        "sched.growth", ii));
    cs.push_back(tagged(check_ge("psi(X_{i+1}/X1) >= X1^3 X_i", plan.psi(Xn / X1), X1 * X1 * X1 * Xi, max_prec),
                        "sched.psi", ii));
    if (i + 2 > last) continue;
    cs.push_back(tagged(check_le("2 X_{i+1}^2 <= X_i X_{i+2}", num(2) * Xn * Xn, Xi * s.X(i + 2), max_prec),
                        "sched.convex", ii));
  }
  return s;
}

namespace {

bool bullets_pass(const Plan& p) { return combine(p.checks) == Status::Pass; }

}  // namespace

PlanResult make_plan(const PlanInput& in, const PlanAudit& audit) {
  in.alpha.validate();
  in.psi.validate();
  if (in.C1 <= 0) throw PlanError("C1 must be positive");
  if (in.delta <= 0) throw PlanError("delta must be positive");
  if (in.steps < 2) throw PlanError("steps must be >= 2");
  if (in.theta && *in.theta <= 0) throw PlanError("theta must be positive");
  const Companion comp = choose_companion(in.x0, in.delta);

  auto finish = [&](Plan p) {
    Schedule s = schedule_X(p, in.max_prec);
    return PlanResult{std::move(p), std::move(s)};
  };

  if (in.multiplier) {
    Plan p = plan_for_multiplier(in, comp, *in.multiplier);
    p.multiplier_rule = "given";
    return finish(std::move(p));
  }

  if (in.toy) {
    for (Int n = 1; n <= 1000000; ++n) {
      Plan p = plan_for_multiplier(in, comp, n);
      if (bullets_pass(p)) {
        p.multiplier_rule = "toy";
        return finish(std::move(p));
      }
    }
    throw PlanError("toy multiplier search exhausted");
  }

  // Smallest n passing `pred`, assuming pred is monotone from `from` on.
  const Int cap = Int(1) << 80;
  auto search = [&](const Int& from, auto&& pred) -> Int {
    Int lo = from - 1, hi = from;
    while (!pred(hi)) {
      lo = hi;
      hi *= 2;
      if (hi > cap) throw PlanError("multiplier search exceeded 2^80");
    }
    while (hi - lo > 1) {
      const Int mid = (lo + hi) / 2;
      if (pred(mid)) hi = mid;
      else lo = mid;
    }
    return hi;
  };

  const Int nb = search(Int(1), [&](const Int& n) { return bullets_pass(plan_for_multiplier(in, comp, n)); });
  if (!audit) {
    Plan p = plan_for_multiplier(in, comp, nb);
    p.multiplier_rule = "bullets";
    return finish(std::move(p));
  }
  const Int na = search(nb, [&](const Int& n) {
    Plan p = plan_for_multiplier(in, comp, n);
    if (!bullets_pass(p)) return false;
    const Schedule s = schedule_X(p, in.max_prec);
    return s.ok() && audit(p, s);
  });
  Plan p = plan_for_multiplier(in, comp, na);
  p.multiplier_rule = "audit";
  return finish(std::move(p));
}

}  // namespace signcert
