#pragma once

#include <stdexcept>
#include <string>

#include "signcert/exact/real.hpp"

namespace signcert {

class CfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (a + b*sqrt(d)) / c with c > 0, d > 1 squarefree, b != 0.
struct QuadraticIrrational {
  Int a, b, c, d;

  static QuadraticIrrational sqrt2_minus_1() { return {Int(-1), Int(1), Int(1), Int(2)}; }
  // Parses "sqrt2-1" or "(a+b*sqrt(d))/c" written as "a,b,c,d".
  static QuadraticIrrational parse(const std::string& s);
  std::string to_string() const;

  // Throws CfError unless the representation is valid and the value lies in (0, 1/2).
  void validate() const;

  Real value() const;

  // Exact sign of u + v*alpha for integers u, v.
  int sign_affine(const Int& u, const Int& v) const;
  // Exact floor of u + v*alpha.
  Int floor_affine(const Int& u, const Int& v) const;
  // Nearest integer to v*alpha (never a tie for irrational alpha).
  Int nearest_multiple(const Int& v) const;

  // Coefficients (A, B, C) of the primitive integer minimal polynomial A x^2 + B x + C.
  void minimal_polynomial(Int& A, Int& B, Int& C) const;
};

// Sign of A + B*sqrt(d) for integers, d > 0 not a square.
int sign_quadratic(const Int& A, const Int& B, const Int& d);

}  // namespace signcert
