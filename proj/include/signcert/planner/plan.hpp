#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "signcert/cf/quadratic.hpp"
#include "signcert/exact/check.hpp"
#include "signcert/exact/geometry.hpp"

namespace signcert {

class PlanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// psi(t) = c t^e with c, e > 0.
struct PsiSpec {
  Rat c{1};
  Rat e{1};

  Real operator()(const Real& t) const;
  std::string to_string() const;
  void validate() const;
};

struct PlanInput {
  QuadraticIrrational alpha = QuadraticIrrational::sqrt2_minus_1();
  Rat C1{4};
  Rat delta{2, 5};
  IVec3 x0{0, 0, 1};
  PsiSpec psi;
  std::size_t steps = 5;
  std::optional<Rat> theta;       // default 2 (8 C1)^3
  bool toy = false;
  std::optional<Int> multiplier;  // skip the search
  mpfr_prec_t max_prec = kDefaultMaxPrec;
};

struct Plan {
  QuadraticIrrational alpha;
  Rat C1;
  Rat delta;
  IVec3 x0, x0_base, x0_companion;
  Int companion_shift;  // x0_companion = x0_base + shift x0
  IVec3 x0_third;       // det(x0, x0_companion, x0_third) = 1
  Int multiplier;
  IVec3 x1;
  Rat delta0_sq;
  Rat theta;
  PsiSpec psi;
  std::size_t N_steps = 0;
  bool toy = false;
  std::string multiplier_rule;  // "given", "toy", "bullets", "audit"
  std::vector<Check> checks;

  Real X0() const { return Real::sqrt_of(norm_sq(x0)); }
  Real X1() const { return Real::sqrt_of(norm_sq(x1)); }
  Real delta0() const { return Real::sqrt_of(delta0_sq); }
};

// X_0 .. X_{N+2}. X_0 = |x0| and X_1 = |x1| are kept through their exact
// squares, later terms are powers of two.
struct Schedule {
  std::vector<Int> X_sq;
  std::vector<long> log2X;        // -1 for indices 0 and 1
  std::vector<std::string> rule;  // which lower bound fixed X_i (i >= 2)
  std::vector<Check> checks;

  std::size_t size() const { return X_sq.size(); }
  Real X(std::size_t i) const;
  // X_i as an integer, i >= 2 only.
  Int X_int(std::size_t i) const;
  bool ok() const { return combine(checks) == Status::Pass; }
};

struct Companion {
  IVec3 base, companion, third;
  Int shift;
};

Companion choose_companion(const IVec3& x0, const Rat& delta);

Rat default_theta(const Rat& C1);

// Plan for an explicit multiplier with all bullet checks evaluated;
// x1 = n x0_companion + x0_third.
Plan plan_for_multiplier(const PlanInput& in, const Companion& comp, const Int& n);

Schedule schedule_X(const Plan& plan, mpfr_prec_t max_prec = kDefaultMaxPrec);

// Extra acceptance test applied on top of the bullets, e.g. the starred
// ledger. Assumed monotone in the multiplier.
using PlanAudit = std::function<bool(const Plan&, const Schedule&)>;

struct PlanResult {
  Plan plan;
  Schedule schedule;
};

PlanResult make_plan(const PlanInput& in, const PlanAudit& audit = {});

}  // namespace signcert
