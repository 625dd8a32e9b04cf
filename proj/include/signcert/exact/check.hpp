#pragma once

#include <string>
#include <vector>

#include "signcert/exact/real.hpp"

namespace signcert {

enum class Status { Pass, Fail, Undecided };

std::string to_string(Status s);

// One certified inequality or identity, with printable enclosures of both sides.
struct Check {
  std::string clause;
  Status status = Status::Undecided;
  std::string lhs, rhs;  // decimal enclosures or exact values
  mpfr_prec_t prec = 0;  // working precision of the decision (0 = exact)
  std::string note;
  std::string id;  // stable identifier for clauses that are looked up by name
  int index = -1;  // sequence index the clause is instantiated at, if any

  bool passed() const { return status == Status::Pass; }
};

Check check_le(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec = kDefaultMaxPrec);
Check check_lt(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec = kDefaultMaxPrec);
Check check_ge(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec = kDefaultMaxPrec);
Check check_gt(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec = kDefaultMaxPrec);
// Exact integer identity lhs == rhs.
Check check_eq(std::string clause, const Int& lhs, const Int& rhs);
Check check_true(std::string clause, bool ok, std::string lhs = "", std::string rhs = "");

Check tagged(Check c, std::string id, int index = -1);

// Worst status of a list (Fail dominates Undecided dominates Pass).
Status combine(const std::vector<Check>& checks);
const Check* first_not_passed(const std::vector<Check>& checks);

// Short decimal rendering of a real for reports.
std::string describe(const Real& x, mpfr_prec_t prec = 128, int digits = 12);

}  // namespace signcert
