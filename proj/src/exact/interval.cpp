#include "signcert/exact/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace signcert {

Mpfr::Mpfr(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::from_int(const Int& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rat(const Rat& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(const Mpfr& lo, const Mpfr& hi) {
  Interval r(std::max(lo.prec(), hi.prec()));
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}
bool Interval::strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Interval::strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool Interval::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

bool Interval::contains(const Rat& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Rat Interval::lo_rat() const { return mpfr_to_rat(lo_.get()); }
Rat Interval::hi_rat() const { return mpfr_to_rat(hi_.get()); }
double Interval::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

std::string Interval::to_string(int digits) const {
  auto fmt = [digits](mpfr_srcptr x, mpfr_rnd_t rnd) {
    char* s = nullptr;
    mpfr_asprintf(&s, rnd == MPFR_RNDD ? "%.*RDe" : "%.*RUe", digits, x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  };
  return "[" + fmt(lo_.get(), MPFR_RNDD) + ", " + fmt(hi_.get(), MPFR_RNDU) + "]";
}

namespace {

mpfr_prec_t common_prec(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(common_prec(a, b));
  mpfr_add(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(common_prec(a, b));
  mpfr_sub(r.lo().get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(r.hi().get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo().get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = common_prec(a, b);
  Interval r(p);
  Mpfr t(p);
  const mpfr_srcptr al = a.lo().get(), ah = a.hi().get(), bl = b.lo().get(), bh = b.hi().get();
  const mpfr_srcptr pairs[4][2] = {{al, bl}, {al, bh}, {ah, bl}, {ah, bh}};
  mpfr_mul(r.lo().get(), al, bl, MPFR_RNDD);
  mpfr_mul(r.hi().get(), al, bl, MPFR_RNDU);
  for (int k = 1; k < 4; ++k) {
    mpfr_mul(t.get(), pairs[k][0], pairs[k][1], MPFR_RNDD);
    mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), pairs[k][0], pairs[k][1], MPFR_RNDU);
    mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
  const mpfr_prec_t p = common_prec(a, b);
  Interval inv(p);
  mpfr_ui_div(inv.lo().get(), 1, b.hi().get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi().get(), 1, b.lo().get(), MPFR_RNDU);
  return a * inv;
}

Interval sqrt(const Interval& a) {
  if (a.strictly_negative()) throw std::domain_error("interval sqrt of a negative interval");
  Interval r(a.prec());
  if (mpfr_sgn(a.lo().get()) < 0) {
    mpfr_set_zero(r.lo().get(), 1);
  } else {
    mpfr_sqrt(r.lo().get(), a.lo().get(), MPFR_RNDD);
  }
  mpfr_sqrt(r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo().get()) >= 0) return a;
  if (mpfr_sgn(a.hi().get()) <= 0) return -a;
  Interval r(a.prec());
  mpfr_set_zero(r.lo().get(), 1);
  mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
  mpfr_max(r.hi().get(), r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(common_prec(a, b));
  mpfr_min(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(common_prec(a, b));
  mpfr_max(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

Interval pow(const Interval& base, const Interval& exponent) {
  if (!base.strictly_positive()) throw std::domain_error("interval pow needs a positive base");
  const mpfr_prec_t p = common_prec(base, exponent);
  Interval r(p);
  Mpfr t(p);
  const mpfr_srcptr bs[2] = {base.lo().get(), base.hi().get()};
  const mpfr_srcptr es[2] = {exponent.lo().get(), exponent.hi().get()};
  // x^e is monotone in each argument for x > 0, so the extremes sit at corners.
  bool first = true;
  for (auto b : bs) {
    for (auto e : es) {
      if (first) {
        mpfr_pow(r.lo().get(), b, e, MPFR_RNDD);
        mpfr_pow(r.hi().get(), b, e, MPFR_RNDU);
        first = false;
        continue;
      }
      mpfr_pow(t.get(), b, e, MPFR_RNDD);
      mpfr_min(r.lo().get(), r.lo().get(), t.get(), MPFR_RNDD);
      mpfr_pow(t.get(), b, e, MPFR_RNDU);
      mpfr_max(r.hi().get(), r.hi().get(), t.get(), MPFR_RNDU);
    }
  }
  return r;
}

Interval log2(const Interval& a) {
  if (!a.strictly_positive()) throw std::domain_error("interval log2 needs a positive argument");
  Interval r(a.prec());
  mpfr_log2(r.lo().get(), a.lo().get(), MPFR_RNDD);
  mpfr_log2(r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r(common_prec(a, b));
  mpfr_max(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  if (mpfr_cmp(r.lo().get(), r.hi().get()) > 0) {
    throw std::logic_error("disjoint enclosures of the same quantity");
  }
  return r;
}

Interval golden_ratio(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_sqrt_ui(r.lo().get(), 5, MPFR_RNDD);
  mpfr_sqrt_ui(r.hi().get(), 5, MPFR_RNDU);
  mpfr_add_ui(r.lo().get(), r.lo().get(), 1, MPFR_RNDD);
  mpfr_add_ui(r.hi().get(), r.hi().get(), 1, MPFR_RNDU);
  mpfr_div_2ui(r.lo().get(), r.lo().get(), 1, MPFR_RNDD);
  mpfr_div_2ui(r.hi().get(), r.hi().get(), 1, MPFR_RNDU);
  return r;
}

void mpfr_to_dyadic(mpfr_srcptr x, Int& man, long& exp) {
  if (mpfr_zero_p(x)) {
    man = 0;
    exp = 0;
    return;
  }
  if (!mpfr_number_p(x)) throw std::domain_error("non-finite mpfr value");
  exp = mpfr_get_z_2exp(man.get_mpz_t(), x);
  // Normalize: strip trailing zero bits so the representation is canonical.
  const auto tz = mpz_scan1(man.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(man.get_mpz_t(), man.get_mpz_t(), tz);
    exp += static_cast<long>(tz);
  }
}

Rat mpfr_to_rat(mpfr_srcptr x) {
  Int man;
  long exp = 0;
  mpfr_to_dyadic(x, man, exp);
  Rat q(man);
  if (exp > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else if (exp < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  return q;
}

}  // namespace signcert
