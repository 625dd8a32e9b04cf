#include "signcert/exact/ivec3.hpp"

#include <sstream>
#include <stdexcept>

namespace signcert {

IVec3 IVec3::unit(int axis) {
  if (axis < 0 || axis > 2) throw std::out_of_range("IVec3::unit: axis must be 0, 1 or 2");
  IVec3 v;
  v.c[static_cast<std::size_t>(axis)] = 1;
  return v;
}

bool lex_less(const IVec3& a, const IVec3& b) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

IVec3 operator+(const IVec3& a, const IVec3& b) {
  return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]};
}

IVec3 operator-(const IVec3& a, const IVec3& b) {
  return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]};
}

IVec3 operator-(const IVec3& a) { return {-a.c[0], -a.c[1], -a.c[2]}; }

IVec3 operator*(const Int& k, const IVec3& a) {
  return {k * a.c[0], k * a.c[1], k * a.c[2]};
}

std::string IVec3::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IVec3& v) {
  return os << '(' << v.c[0] << ',' << v.c[1] << ',' << v.c[2] << ')';
}

Int dot(const IVec3& a, const IVec3& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

IVec3 cross(const IVec3& a, const IVec3& b) {
  return {a.c[1] * b.c[2] - a.c[2] * b.c[1],
          a.c[2] * b.c[0] - a.c[0] * b.c[2],
          a.c[0] * b.c[1] - a.c[1] * b.c[0]};
}

Int det3(const IVec3& a, const IVec3& b, const IVec3& c) { return dot(a, cross(b, c)); }

Int norm_sq(const IVec3& a) { return dot(a, a); }

Int content(const IVec3& a) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.c[0].get_mpz_t(), a.c[1].get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.c[2].get_mpz_t());
  return g;
}

}  // namespace signcert
