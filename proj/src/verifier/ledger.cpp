#include "signcert/verifier/ledger.hpp"

namespace signcert {

namespace {

Real num(long v) { return Real::from_long(v); }
Real rat(const Rat& q) { return Real::rational(q); }

Real cube(const Real& x) { return x * x * x; }

}  // namespace

ThresholdConstants threshold_constants(const Plan& plan) {
  const Real C1 = rat(plan.C1), d0sq = rat(plan.delta0_sq);
  const Real C2 = cube(num(8) * C1) / d0sq;
  const Real C3 = num(25) * cube(C1) * C2;
  const Real s = num(6) * C1;
  const Real C4 = s * s * s * s * s / d0sq;
  return {C1, C2, C3, C4};
}

std::string clause_key(const Check& c) {
  return c.index >= 0 ? c.id + "[" + std::to_string(c.index) + "]" : c.id;
}

std::vector<std::string> StarredLedger::failing() const {
  std::vector<std::string> out;
  for (const auto& c : clauses)
    if (!c.passed()) out.push_back(clause_key(c));
  return out;
}

StarredLedger starred_ledger_audit(const Plan& plan, const Schedule& s, mpfr_prec_t mp) {
  const std::size_t N = plan.N_steps;
  if (s.size() < N + 3) throw PlanError("audit needs the schedule up to X_{N+2}");
  const auto [C1, C2, C3, C4] = threshold_constants(plan);
  const Real g = Real::golden_ratio(), one = num(1);
  const Real d0 = plan.delta0(), d0sq = rat(plan.delta0_sq);
  const Real X0 = s.X(0), X1 = s.X(1);
  const Real X1c = cube(X1);
  StarredLedger L;
  auto add = [&](Check c, const char* id, int i = -1) { L.clauses.push_back(tagged(std::move(c), id, i)); };

  // Parameter bullets.
  add(check_le("X1 >= 5 X0", num(25) * rat(Rat(s.X_sq[0])), rat(Rat(s.X_sq[1])), mp), "x1_ge_5x0");
  add(check_ge("X1 >= (12 C1)^gamma", X1, pow(num(12) * C1, g), mp), "x1_ge_12c1_gamma");
  add(check_le("9 delta0^2 <= delta^2", num(9) * d0sq, rat(plan.delta * plan.delta), mp), "delta0_le_delta_over_3");
  add(check_le("5C1 X1/X2 + 4C1/(delta0 X0 X1^(gamma+1)) <= delta0",
               num(5) * C1 * X1 / s.X(2) + num(4) * C1 / (d0 * X0 * pow(X1, g + one)), d0, mp),
      "first_delta_tail");

  // Large |q|: C2/(2 (5C1)^2) - 8C1/delta0^2 >= 2C1/delta0^2, then the X1 elimination.
  add(check_ge("C2/(50 C1^2) - 8C1/delta0^2 >= 2C1/delta0^2", C2 / (num(50) * C1 * C1) - num(8) * C1 / d0sq,
               num(2) * C1 / d0sq, mp),
      "large_q.margin");
  add(check_ge("2C1 X1^(2-gamma) >= delta0^2", num(2) * C1 * pow(X1, num(2) - g), d0sq, mp), "large_q.final");

  // Moderate |q|.
  add(check_ge("X1 >= C2/2 (so |q| < q_n)", X1, C2 / num(2), mp), "moderate_q.q_below_qn");
  add(check_le("2 C3 C2^(1/gamma) <= X1^3", num(2) * C3 * pow(C2, one / g), X1c, mp), "moderate_q.final");

  // Points in the plane, and multiples of x_i.
  const Real s6 = num(6) * C1;
  add(check_le("(6C1)^3 <= X1^(2-gamma)", cube(s6), pow(X1, num(2) - g), mp), "in_plane.final");

  for (std::size_t i = 1; i <= N + 1; ++i) {
    const int ii = static_cast<int>(i);
    const Real Xm = s.X(i - 1), Xi = s.X(i), Xn = s.X(i + 1);
    // Worst |x| in X_i/X1 <= |x| is the smallest one, but never below 1.
    const Real xmin = max(one, Xi / X1);
    add(check_le("16 C1 C3 <= delta0^2 X1^(gamma+1) |x|^(gamma-1) at the smallest |x|", num(16) * C1 * C3,
                 d0sq * pow(X1, g + one) * pow(xmin, g - one), mp),
        "moderate_q.half", ii);
    add(check_le("8C1 (5C1)^2 X_i^gamma <= delta0^2 X1 X_{i+1}^gamma", num(8) * C1 * num(25) * C1 * C1 * pow(Xi, g),
                 d0sq * X1 * pow(Xn, g), mp),
        "in_plane.margin", ii);
    if (i + 2 < s.size())
      add(check_le("delta0 X_i X_{i+1}^(gamma+2) <= X_{i+2}", d0 * Xi * pow(Xn, g + num(2)), s.X(i + 2), mp),
          "in_plane.tail", ii);
    add(check_le("9 X_{i+1} <= delta0 X1 X_{i-1} X_i X_{i+1}^(gamma+1)", num(9) * Xn,
                 d0 * X1 * Xm * Xi * pow(Xn, g + one), mp),
        "in_plane.dist", ii);
    // |x_{i-1}| <= 5C1 X_{i-1}, exact for i - 1 <= 1.
    const Real norm_prev = i - 1 <= 1 ? Xm : num(5) * C1 * Xm;
    add(check_le("|x_{i-1}| <= X1 X_{i-1}", norm_prev, X1 * Xm, mp), "multiple.norm", ii);
    add(check_le("X1^2 X_{i-1} <= X_{i+1}", X1 * X1 * Xm, Xn, mp), "multiple.reach", ii);
    const Real s4 = s6 * s6 * s6 * s6;
    add(check_ge("delta0 X1^3 X_{i-1} (X_i/X1)^(gamma+1) >= (6C1)^4", d0 * X1c * Xm * pow(Xi / X1, g + one), s4, mp),
        "multiple.final", ii);
  }

  // Witness constants: both halves of the small-value condition fit under C4.
  const Real five_c1 = num(5) * C1;
  add(check_le("40 C1^2 (5C1)^(gamma+1) <= delta0^2 C4", num(40) * C1 * C1 * pow(five_c1, g + one), d0sq * C4, mp),
      "witness.u_constant");
  add(check_le("45 C1^2 (5C1)^(gamma+1) <= delta0 C4", num(45) * C1 * C1 * pow(five_c1, g + one), d0 * C4, mp),
      "witness.vw_constant");
  return L;
}

StarredLedger starred_ledger_audit(const ConstructionState& st) {
  return starred_ledger_audit(st.plan, st.schedule);
}

}  // namespace signcert
