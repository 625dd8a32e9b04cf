#pragma once

#include <gmpxx.h>

#include <array>
#include <ostream>
#include <string>

namespace signcert {

using Int = mpz_class;
using Rat = mpq_class;

// Exact integer point of Z^3.
struct IVec3 {
  std::array<Int, 3> c{Int(0), Int(0), Int(0)};

  IVec3() = default;
  IVec3(Int x0, Int x1, Int x2) : c{std::move(x0), std::move(x1), std::move(x2)} {}

  static IVec3 unit(int axis);

  const Int& operator[](std::size_t i) const { return c[i]; }
  Int& operator[](std::size_t i) { return c[i]; }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }

  friend bool operator==(const IVec3& a, const IVec3& b) {
    return a.c[0] == b.c[0] && a.c[1] == b.c[1] && a.c[2] == b.c[2];
  }
  friend bool operator!=(const IVec3& a, const IVec3& b) { return !(a == b); }

  // Lexicographic order on coordinates.
  friend bool lex_less(const IVec3& a, const IVec3& b);

  friend IVec3 operator+(const IVec3& a, const IVec3& b);
  friend IVec3 operator-(const IVec3& a, const IVec3& b);
  friend IVec3 operator-(const IVec3& a);
  friend IVec3 operator*(const Int& k, const IVec3& a);

  std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const IVec3& v);

Int dot(const IVec3& a, const IVec3& b);
IVec3 cross(const IVec3& a, const IVec3& b);
Int det3(const IVec3& a, const IVec3& b, const IVec3& c);
Int norm_sq(const IVec3& a);

// gcd of the three coordinates (0 for the zero vector).
Int content(const IVec3& a);

}  // namespace signcert
