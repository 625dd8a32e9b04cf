#pragma once

#include <stdexcept>
#include <vector>

#include "signcert/planner/plan.hpp"
#include "signcert/stepper/step.hpp"

namespace signcert {

class BuildError : public std::runtime_error {
 public:
  BuildError(const Check& c, std::size_t step)
      : std::runtime_error("step " + std::to_string(step) + ": clause '" + c.clause + "' " + to_string(c.status) +
                           " (" + c.lhs + " vs " + c.rhs + ")"),
        check_(c),
        step_(step) {}
  const Check& check() const { return check_; }
  std::size_t step() const { return step_; }

 private:
  Check check_;
  std::size_t step_;
};

struct StepRecord {
  std::size_t i = 0;  // x* = x_{i-1}, x = x_i, x' = x_{i+1}
  StepInput input;
  StepOutput out;
  StepCertificate cert;
};

struct ConstructionState {
  Plan plan;
  Schedule schedule;
  ConvergentTable table;
  std::vector<IVec3> x;          // x_0 .. x_N
  std::vector<IVec3> y;          // y_1 .. y_{N-1} at index i (index 0 unused)
  std::vector<StepRecord> steps;  // steps[i-1] builds x_{i+1}
  std::vector<Rat> delta_ub;      // rational upper bounds of delta_0 .. delta_{N+1}
  std::vector<Check> checks;      // delta ledger, intersection and enclosure checks

  std::size_t N() const { return x.size() - 1; }
  Real X(std::size_t i) const { return schedule.X(i); }
  // delta_i as a certified real (delta_0 = delta0).
  Real delta(std::size_t i) const;
  bool ok() const;
};

struct BuildOptions {
  // Steps always abort on failure; the delta ledger only does when this is set.
  bool strict_ledger = true;
  mpfr_prec_t max_prec = kDefaultMaxPrec;
};

ConstructionState build(const Plan& plan, const Schedule& schedule, const BuildOptions& opt = {});

enum class DirectionKind { U, V, W };

std::string to_string(DirectionKind k);

struct DirectionEnclosure {
  DirectionKind kind = DirectionKind::U;
  IVec3 rep;
  Rat radius_ub;     // dist(rep, limit) <= radius_ub
  Rat radius_sq_ub;  // radius_ub^2
  std::size_t anchor_index = 0;
};

// U from the normal of (x_{i-1}, x_i), 1 <= i <= N.
DirectionEnclosure enclose_u(const ConstructionState& s, std::size_t i);
// V from odd-index x's, W from even-index x's; rep is the last one built.
DirectionEnclosure enclose_vw(const ConstructionState& s, DirectionKind kind);
// Same with an explicit anchor k (x_k of the right parity, k <= N).
DirectionEnclosure enclose_vw_at(const ConstructionState& s, std::size_t k);

// Certified lower bound |x . rep|/|rep| - 2 |x| radius for |x . u|.
Real x_dot_u_lower(const IVec3& x, const DirectionEnclosure& u);
// Certified upper bound |x . rep|/|rep| + 2 |x| radius.
Real x_dot_u_upper(const IVec3& x, const DirectionEnclosure& u);
// dist(x, rep) + radius >= dist(x, limit).
Real dist_upper(const IVec3& x, const DirectionEnclosure& e);
// max(dist(x, rep) - radius, 0) <= dist(x, limit).
Real dist_lower(const IVec3& x, const DirectionEnclosure& e);

// A rational upper bound of x: the upper endpoint of its enclosure at `prec` bits.
Rat upper_rat(const Real& x, mpfr_prec_t prec = 128);

}  // namespace signcert
