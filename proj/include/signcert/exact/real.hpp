#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "signcert/exact/interval.hpp"

namespace signcert {

inline constexpr mpfr_prec_t kStartPrec = 64;
inline constexpr mpfr_prec_t kDefaultMaxPrec = mpfr_prec_t{1} << 16;

// A real number given by a deterministic rule that encloses it at any
// requested working precision. When the value is known to be rational the
// exact value is carried along and comparisons use it directly.
class Real {
 public:
  using Rule = std::function<Interval(mpfr_prec_t)>;

  Real();  // zero
  Real(Rule rule, std::optional<Rat> exact = std::nullopt);

  static Real rational(const Rat& q);
  static Real integer(const Int& z) { return rational(Rat(z)); }
  static Real from_long(long v) { return rational(Rat(v)); }
  // sqrt(n) for n >= 0; exact when n is a perfect square.
  static Real sqrt_of(const Int& n);
  // sqrt(q) for q >= 0; exact when numerator and denominator are squares.
  static Real sqrt_of(const Rat& q);
  static Real golden_ratio();

  Interval enclose(mpfr_prec_t prec) const;
  const std::optional<Rat>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator-(const Real& a);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real sqrt(const Real& a);
  friend Real abs(const Real& a);
  friend Real min(const Real& a, const Real& b);
  friend Real max(const Real& a, const Real& b);
  // a > 0.
  friend Real pow(const Real& a, const Real& e);

 private:
  std::shared_ptr<const Rule> rule_;
  std::optional<Rat> exact_;
};

// Enclosure of a Real at a given precision, plus the rule to refine it.
class BallReal {
 public:
  BallReal(Real value, mpfr_prec_t prec);

  const Real& value() const { return value_; }
  const Interval& enclosure() const { return enc_; }
  mpfr_prec_t prec() const { return enc_.prec(); }

  // Re-evaluates at `prec` and intersects with the current enclosure, so
  // the result is never wider than this one.
  BallReal refined(mpfr_prec_t prec) const;

  // Midpoint-radius form with dyadic components: value = man * 2^exp.
  struct Dyadic {
    Int mid_man;
    long mid_exp = 0;
    Int rad_man;
    long rad_exp = 0;
  };
  Dyadic dyadic() const;
  Rat mid() const;
  Rat rad() const;

 private:
  BallReal(Real value, Interval enc) : value_(std::move(value)), enc_(std::move(enc)) {}

  Real value_;
  Interval enc_;
};

enum class Ordering { Less, Equal, Greater, Undecided };

std::string to_string(Ordering o);

struct CompareResult {
  Ordering order = Ordering::Undecided;
  mpfr_prec_t prec = 0;  // working precision at which the answer was obtained (0 = exact)
};

// Decides a <=> b. Exact values compare exactly; otherwise enclosures are
// refined by doubling precision from kStartPrec until they are disjoint or
// max_prec is exceeded. Never returns a wrong strict answer.
CompareResult certified_compare(const Real& a, const Real& b,
                                mpfr_prec_t max_prec = kDefaultMaxPrec);
CompareResult certified_compare(const BallReal& a, const BallReal& b,
                                mpfr_prec_t max_prec = kDefaultMaxPrec);

// Sign of a (Equal meaning zero).
CompareResult certified_sign(const Real& a, mpfr_prec_t max_prec = kDefaultMaxPrec);

// Interval of `a` at the smallest doubling precision whose width relative to
// |a| is at most 2^-rel_bits (or at max_prec).
Interval enclose_tight(const Real& a, int rel_bits = 60, mpfr_prec_t max_prec = kDefaultMaxPrec);

}  // namespace signcert
