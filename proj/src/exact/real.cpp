#include "signcert/exact/real.hpp"

#include <stdexcept>

namespace signcert {

namespace {

Real::Rule make_rational_rule(const Rat& q) {
  return [q](mpfr_prec_t p) { return Interval::from_rat(q, p); };
}

bool is_perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

}  // namespace

Real::Real() : Real(make_rational_rule(Rat(0)), Rat(0)) {}

Real::Real(Rule rule, std::optional<Rat> exact)
    : rule_(std::make_shared<const Rule>(std::move(rule))), exact_(std::move(exact)) {}

Real Real::rational(const Rat& q) { return Real(make_rational_rule(q), q); }

Real Real::sqrt_of(const Int& n) {
  if (n < 0) throw std::domain_error("sqrt of a negative integer");
  Int root;
  if (is_perfect_square(n, root)) return integer(root);
  return Real([n](mpfr_prec_t p) {
    Interval r(p);
    mpfr_set_z(r.lo().get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi().get(), n.get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(r.lo().get(), r.lo().get(), MPFR_RNDD);
    mpfr_sqrt(r.hi().get(), r.hi().get(), MPFR_RNDU);
    return r;
  });
}

Real Real::sqrt_of(const Rat& q) {
  if (q < 0) throw std::domain_error("sqrt of a negative rational");
  Int rn, rd;
  if (is_perfect_square(q.get_num(), rn) && is_perfect_square(q.get_den(), rd)) {
    return rational(Rat(rn, rd));
  }
  return Real([q](mpfr_prec_t p) { return sqrt(Interval::from_rat(q, p)); });
}

Real Real::golden_ratio() {
  return Real([](mpfr_prec_t p) { return signcert::golden_ratio(p); });
}

Interval Real::enclose(mpfr_prec_t prec) const { return (*rule_)(prec); }

Real operator+(const Real& a, const Real& b) {
  std::optional<Rat> ex;
  if (a.exact_ && b.exact_) ex = *a.exact_ + *b.exact_;
  return Real([a, b](mpfr_prec_t p) { return a.enclose(p) + b.enclose(p); }, std::move(ex));
}

Real operator-(const Real& a, const Real& b) {
  std::optional<Rat> ex;
  if (a.exact_ && b.exact_) ex = *a.exact_ - *b.exact_;
  return Real([a, b](mpfr_prec_t p) { return a.enclose(p) - b.enclose(p); }, std::move(ex));
}

Real operator-(const Real& a) {
  std::optional<Rat> ex;
  if (a.exact_) ex = -*a.exact_;
  return Real([a](mpfr_prec_t p) { return -a.enclose(p); }, std::move(ex));
}

Real operator*(const Real& a, const Real& b) {
  std::optional<Rat> ex;
  if (a.exact_ && b.exact_) ex = *a.exact_ * *b.exact_;
  return Real([a, b](mpfr_prec_t p) { return a.enclose(p) * b.enclose(p); }, std::move(ex));
}

Real operator/(const Real& a, const Real& b) {
  std::optional<Rat> ex;
  if (b.exact_ && *b.exact_ == 0) throw std::domain_error("Real division by exact zero");
  if (a.exact_ && b.exact_) ex = *a.exact_ / *b.exact_;
  return Real([a, b](mpfr_prec_t p) { return a.enclose(p) / b.enclose(p); }, std::move(ex));
}

Real sqrt(const Real& a) {
  if (a.exact_) return Real::sqrt_of(*a.exact_);
  return Real([a](mpfr_prec_t p) { return sqrt(a.enclose(p)); });
}

Real abs(const Real& a) {
  std::optional<Rat> ex;
  if (a.exact_) ex = ::abs(*a.exact_);
  return Real([a](mpfr_prec_t p) { return abs(a.enclose(p)); }, std::move(ex));
}

Real min(const Real& a, const Real& b) {
  std::optional<Rat> ex;
  if (a.exact_ && b.exact_) ex = *a.exact_ < *b.exact_ ? *a.exact_ : *b.exact_;
  return Real([a, b](mpfr_prec_t p) { return min(a.enclose(p), b.enclose(p)); }, std::move(ex));
}

Real max(const Real& a, const Real& b) {
  std::optional<Rat> ex;
  if (a.exact_ && b.exact_) ex = *a.exact_ < *b.exact_ ? *b.exact_ : *a.exact_;
  return Real([a, b](mpfr_prec_t p) { return max(a.enclose(p), b.enclose(p)); }, std::move(ex));
}

Real pow(const Real& a, const Real& e) {
  std::optional<Rat> ex;
  if (a.exact_ && e.exact_ && e.exact_->get_den() == 1 && ::abs(*e.exact_) <= 64) {
    const long k = e.exact_->get_num().get_si();
    Int num, den;
    const unsigned long uk = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_pow_ui(num.get_mpz_t(), a.exact_->get_num_mpz_t(), uk);
    mpz_pow_ui(den.get_mpz_t(), a.exact_->get_den_mpz_t(), uk);
    Rat v(num, den);
    v.canonicalize();
    ex = k < 0 ? Rat(1) / v : v;
  }
  return Real([a, e](mpfr_prec_t p) { return pow(a.enclose(p), e.enclose(p)); }, std::move(ex));
}

BallReal::BallReal(Real value, mpfr_prec_t prec) : value_(std::move(value)), enc_(value_.enclose(prec)) {}

BallReal BallReal::refined(mpfr_prec_t prec) const {
  return BallReal(value_, intersect(enc_, value_.enclose(prec)));
}

Rat BallReal::mid() const { return (enc_.lo_rat() + enc_.hi_rat()) / 2; }
Rat BallReal::rad() const { return (enc_.hi_rat() - enc_.lo_rat()) / 2; }

BallReal::Dyadic BallReal::dyadic() const {
  // Both endpoints are dyadic, so midpoint and radius are exact dyadics.
  Int lm, hm;
  long le = 0, he = 0;
  mpfr_to_dyadic(enc_.lo().get(), lm, le);
  mpfr_to_dyadic(enc_.hi().get(), hm, he);
  if (lm == 0) le = he;
  if (hm == 0) he = le;
  const long e = std::min(le, he);
  Int l = lm, h = hm;
  mpz_mul_2exp(l.get_mpz_t(), l.get_mpz_t(), static_cast<mp_bitcnt_t>(le - e));
  mpz_mul_2exp(h.get_mpz_t(), h.get_mpz_t(), static_cast<mp_bitcnt_t>(he - e));
  auto normalize = [](Int& man, long& exp) {
    if (man == 0) {
      exp = 0;
      return;
    }
    const auto tz = mpz_scan1(man.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(man.get_mpz_t(), man.get_mpz_t(), tz);
    exp += static_cast<long>(tz);
  };
  Dyadic d;
  d.mid_man = l + h;
  d.mid_exp = e - 1;
  d.rad_man = h - l;
  d.rad_exp = e - 1;
  normalize(d.mid_man, d.mid_exp);
  normalize(d.rad_man, d.rad_exp);
  return d;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    case Ordering::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

Ordering compare_intervals(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.hi().get(), b.lo().get()) < 0) return Ordering::Less;
  if (mpfr_cmp(a.lo().get(), b.hi().get()) > 0) return Ordering::Greater;
  return Ordering::Undecided;
}

}  // namespace

CompareResult certified_compare(const Real& a, const Real& b, mpfr_prec_t max_prec) {
  if (a.exact() && b.exact()) {
    const int c = cmp(*a.exact(), *b.exact());
    return {c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal), 0};
  }
  std::optional<Interval> ia, ib;
  mpfr_prec_t prec = kStartPrec;
  mpfr_prec_t last = prec;
  for (; prec <= max_prec; prec *= 2) {
    last = prec;
    try {
      Interval na = a.enclose(prec);
      Interval nb = b.enclose(prec);
      ia = ia ? intersect(*ia, na) : na;
      ib = ib ? intersect(*ib, nb) : nb;
    } catch (const std::domain_error&) {
      continue;  // enclosure too coarse at this precision
    }
    const Ordering o = compare_intervals(*ia, *ib);
    if (o != Ordering::Undecided) return {o, prec};
  }
  return {Ordering::Undecided, last};
}

CompareResult certified_compare(const BallReal& a, const BallReal& b, mpfr_prec_t max_prec) {
  if (a.value().exact() && b.value().exact()) return certified_compare(a.value(), b.value(), max_prec);
  Ordering o = compare_intervals(a.enclosure(), b.enclosure());
  if (o != Ordering::Undecided) return {o, std::max(a.prec(), b.prec())};
  BallReal ra = a, rb = b;
  mpfr_prec_t prec = std::max(a.prec(), b.prec());
  mpfr_prec_t last = prec;
  for (prec *= 2; prec <= max_prec; prec *= 2) {
    last = prec;
    try {
      ra = ra.refined(prec);
      rb = rb.refined(prec);
    } catch (const std::domain_error&) {
      continue;
    }
    o = compare_intervals(ra.enclosure(), rb.enclosure());
    if (o != Ordering::Undecided) return {o, prec};
  }
  return {Ordering::Undecided, last};
}

CompareResult certified_sign(const Real& a, mpfr_prec_t max_prec) {
  return certified_compare(a, Real(), max_prec);
}

Interval enclose_tight(const Real& a, int rel_bits, mpfr_prec_t max_prec) {
  mpfr_prec_t prec = kStartPrec;
  std::optional<Interval> best;
  for (; prec <= max_prec; prec *= 2) {
    try {
      Interval e = a.enclose(prec);
      best = best ? intersect(*best, e) : e;
    } catch (const std::domain_error&) {
      continue;
    }
    Mpfr width(prec);
    mpfr_sub(width.get(), best->hi().get(), best->lo().get(), MPFR_RNDU);
    // width <= 2^-rel_bits * lower(|a|)
    Mpfr bound(prec);
    mpfr_mul_2si(bound.get(), abs(*best).lo().get(), -rel_bits, MPFR_RNDD);
    if (mpfr_cmp(width.get(), bound.get()) <= 0) return *best;
  }
  if (!best) throw std::domain_error("enclose_tight: no enclosure within max_prec");
  return *best;
}

}  // namespace signcert
