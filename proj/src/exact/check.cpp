#include "signcert/exact/check.hpp"

namespace signcert {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "Pass";
    case Status::Fail: return "Fail";
    case Status::Undecided: return "Undecided";
  }
  return "?";
}

std::string describe(const Real& x, mpfr_prec_t prec, int digits) {
  if (x.exact()) {
    const Rat& q = *x.exact();
    if (mpz_sizeinbase(q.get_num_mpz_t(), 10) + mpz_sizeinbase(q.get_den_mpz_t(), 10) < 40) return q.get_str();
  }
  try {
    return x.enclose(prec).to_string(digits);
  } catch (const std::domain_error&) {
    return "?";
  }
}

namespace {

Check decide(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec, bool allow_equal,
             bool want_less) {
  Check c;
  c.clause = std::move(clause);
  const CompareResult r = certified_compare(lhs, rhs, max_prec);
  c.prec = r.prec;
  const mpfr_prec_t shown = std::max<mpfr_prec_t>(r.prec, 64);
  c.lhs = describe(lhs, shown);
  c.rhs = describe(rhs, shown);
  switch (r.order) {
    case Ordering::Undecided: c.status = Status::Undecided; break;
    case Ordering::Equal: c.status = allow_equal ? Status::Pass : Status::Fail; break;
    case Ordering::Less: c.status = want_less ? Status::Pass : Status::Fail; break;
    case Ordering::Greater: c.status = want_less ? Status::Fail : Status::Pass; break;
  }
  return c;
}

}  // namespace

Check check_le(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec) {
  return decide(std::move(clause), lhs, rhs, max_prec, true, true);
}
Check check_lt(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec) {
  return decide(std::move(clause), lhs, rhs, max_prec, false, true);
}
Check check_ge(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec) {
  return decide(std::move(clause), lhs, rhs, max_prec, true, false);
}
Check check_gt(std::string clause, const Real& lhs, const Real& rhs, mpfr_prec_t max_prec) {
  return decide(std::move(clause), lhs, rhs, max_prec, false, false);
}

Check check_eq(std::string clause, const Int& lhs, const Int& rhs) {
  Check c;
  c.clause = std::move(clause);
  c.lhs = lhs.get_str();
  c.rhs = rhs.get_str();
  c.status = lhs == rhs ? Status::Pass : Status::Fail;
  return c;
}

Check check_true(std::string clause, bool ok, std::string lhs, std::string rhs) {
  Check c;
  c.clause = std::move(clause);
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.status = ok ? Status::Pass : Status::Fail;
  return c;
}

Check tagged(Check c, std::string id, int index) {
  c.id = std::move(id);
  c.index = index;
  return c;
}

Status combine(const std::vector<Check>& checks) {
  Status s = Status::Pass;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Undecided) s = Status::Undecided;
  }
  return s;
}

const Check* first_not_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return &c;
  for (const auto& c : checks)
    if (c.status == Status::Undecided) return &c;
  return nullptr;
}

}  // namespace signcert
