#pragma once

#include <string>
#include <vector>

#include "signcert/builder/build.hpp"

namespace signcert {

struct ThresholdConstants {
  Real C1, C2, C3, C4;
};

// C2 = (8 C1)^3 / delta0^2, C3 = 25 C1^3 C2, C4 = (6 C1)^5 / delta0^2.
ThresholdConstants threshold_constants(const Plan& plan);

struct StarredLedger {
  std::vector<Check> clauses;

  bool clean() const { return combine(clauses) == Status::Pass; }
  // "id[i]" for every clause that did not pass.
  std::vector<std::string> failing() const;
};

// Every threshold inequality of the small-|x.u| case analysis and of the
// parameter bullets, instantiated with this run's delta0, X_i and C1, for
// i = 1 .. N+1 where the needed X's exist.
StarredLedger starred_ledger_audit(const Plan& plan, const Schedule& schedule,
                                   mpfr_prec_t max_prec = kDefaultMaxPrec);
StarredLedger starred_ledger_audit(const ConstructionState& state);

std::string clause_key(const Check& c);

}  // namespace signcert
