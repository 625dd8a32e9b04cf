#pragma once

#include <stdexcept>
#include <vector>

#include "signcert/exact/ivec3.hpp"
#include "signcert/exact/real.hpp"

namespace signcert {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Square of the projective distance ||a^b||^2 / (||a||^2 ||b||^2), in [0, 1].
struct ProjDistSq {
  Rat value;
};

ProjDistSq proj_dist_sq(const IVec3& a, const IVec3& b);

// dist(a, b) as a certified real (sqrt of the exact square).
Real proj_dist(const IVec3& a, const IVec3& b);

// Enclosure of dist(a, b) of width at most 2^(1-prec).
BallReal proj_dist_ball(const IVec3& a, const IVec3& b, mpfr_prec_t prec);

// ||a|| as a certified real.
Real norm(const IVec3& a);

bool is_primitive_point(const IVec3& a);
bool is_primitive_pair(const IVec3& a, const IVec3& b);

// The z with det3(a, b, z) = 1 of smallest norm modulo <a, b>_Z, ties broken
// lexicographically. Throws GeometryError if (a, b) is not primitive.
IVec3 complete_to_basis(const IVec3& a, const IVec3& b);

// Elementary divisors (Smith invariants) of the 3 x k integer matrix whose
// columns are `cols`, k <= 3. Zero divisors are reported for rank deficiency.
std::vector<Int> elementary_divisors(const std::vector<IVec3>& cols);

// Some w with dot(c, w) = 1 for a primitive c, via the extended-gcd chain.
IVec3 solve_unit_dot(const IVec3& c);

}  // namespace signcert
