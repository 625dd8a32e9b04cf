#pragma once

#include <mpfr.h>

#include <string>

#include "signcert/exact/ivec3.hpp"

namespace signcert {

// Owning wrapper around mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with endpoints rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);

  static Interval from_int(const Int& z, mpfr_prec_t prec);
  static Interval from_rat(const Rat& q, mpfr_prec_t prec);
  static Interval from_bounds(const Mpfr& lo, const Mpfr& hi);

  mpfr_prec_t prec() const { return lo_.prec(); }
  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }
  Mpfr& lo() { return lo_; }
  Mpfr& hi() { return hi_; }

  bool contains_zero() const;
  bool strictly_positive() const;
  bool strictly_negative() const;
  bool contains(const Rat& q) const;
  bool is_point() const;

  // Exact dyadic rationals for the endpoints.
  Rat lo_rat() const;
  Rat hi_rat() const;
  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up

  std::string to_string(int digits = 20) const;

 private:
  Mpfr lo_;
  Mpfr hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval sqrt(const Interval& a);
Interval abs(const Interval& a);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
// base must be strictly positive.
Interval pow(const Interval& base, const Interval& exponent);
Interval log2(const Interval& a);
// Intersection; throws if disjoint (would mean a broken enclosure).
Interval intersect(const Interval& a, const Interval& b);

// (1 + sqrt 5) / 2
Interval golden_ratio(mpfr_prec_t prec);

// Exact dyadic value of an mpfr number as a rational.
Rat mpfr_to_rat(mpfr_srcptr x);
// x = man * 2^exp exactly (man = 0, exp = 0 for zero).
void mpfr_to_dyadic(mpfr_srcptr x, Int& man, long& exp);

}  // namespace signcert
