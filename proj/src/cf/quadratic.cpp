#include "signcert/cf/quadratic.hpp"

#include <regex>

namespace signcert {

int sign_quadratic(const Int& A, const Int& B, const Int& d) {
  const int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare A^2 with B^2 d
  const int c = cmp(A * A, B * B * d);
  return c > 0 ? sa : sb;  // never 0 since d is not a square
}

QuadraticIrrational QuadraticIrrational::parse(const std::string& s) {
  if (s == "sqrt2-1") return sqrt2_minus_1();
  static const std::regex re(R"(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw CfError("alpha: expected sqrt2-1 or a,b,c,d, got '" + s + "'");
  QuadraticIrrational q{Int(m[1].str()), Int(m[2].str()), Int(m[3].str()), Int(m[4].str())};
  if (q.c < 0) {
    q.a = -q.a;
    q.b = -q.b;
    q.c = -q.c;
  }
  q.validate();
  return q;
}

std::string QuadraticIrrational::to_string() const {
  if (a == -1 && b == 1 && c == 1 && d == 2) return "sqrt2-1";
  return a.get_str() + "," + b.get_str() + "," + c.get_str() + "," + d.get_str();
}

void QuadraticIrrational::validate() const {
  if (c <= 0) throw CfError("alpha: denominator must be positive");
  if (b == 0) throw CfError("alpha: must be irrational (b != 0)");
  if (d < 2) throw CfError("alpha: d must be at least 2");
  for (Int p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) throw CfError("alpha: d must be squarefree");
  // 0 < alpha < 1/2
  if (sign_affine(Int(0), Int(1)) <= 0) throw CfError("alpha must be positive");
  if (sign_affine(Int(-1), Int(2)) >= 0) throw CfError("alpha must be below 1/2");
}

Real QuadraticIrrational::value() const {
  return (Real::integer(a) + Real::integer(b) * Real::sqrt_of(d)) / Real::integer(c);
}

int QuadraticIrrational::sign_affine(const Int& u, const Int& v) const {
  // c (u + v alpha) = (u c + v a) + v b sqrt(d), c > 0
  return sign_quadratic(u * c + v * a, v * b, d);
}

Int QuadraticIrrational::floor_affine(const Int& u, const Int& v) const {
  // (u c + v a + v b sqrt d) / c; floor of the surd part first
  const Int A = u * c + v * a, B = v * b;
  Int t;
  if (B == 0) {
    t = 0;
  } else {
    Int s = B * B * d;
    mpz_sqrt(t.get_mpz_t(), s.get_mpz_t());  // floor(|B| sqrt d), never exact
    if (B < 0) t = -t - 1;
  }
  Int r, num = A + t;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
  return r;
}

Int QuadraticIrrational::nearest_multiple(const Int& v) const {
  // floor(v alpha + 1/2) = floor((1 + 2 v alpha) / 2)
  Int f = floor_affine(Int(1), 2 * v);
  Int r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), f.get_mpz_t(), 1);
  return r;
}

void QuadraticIrrational::minimal_polynomial(Int& A, Int& B, Int& C) const {
  // (c x - a)^2 = b^2 d
  A = c * c;
  B = -2 * a * c;
  C = a * a - b * b * d;
  Int g = gcd(gcd(A, B), C);
  A /= g;
  B /= g;
  C /= g;
}

}  // namespace signcert
