#pragma once

#include <stdexcept>
#include <variant>

#include "signcert/cf/convergents.hpp"
#include "signcert/exact/check.hpp"
#include "signcert/exact/geometry.hpp"

namespace signcert {

// Y is an exact rational, X^gamma for an integer X, or sqrt(S)^gamma for an
// integer S (used when only X^2 is an integer).
struct PowGamma {
  Int X;
};
struct SqrtPowGamma {
  Int S;
};
using YSpec = std::variant<Rat, PowGamma, SqrtPowGamma>;

Real y_value(const YSpec& y);
// Y^2 as a real (exact for rational Y).
Real y_squared(const YSpec& y);
std::string to_string(const YSpec& y);

struct StepInput {
  IVec3 x_star, x;
  YSpec Y;
  Int X_prime;
  const ConvergentTable* table = nullptr;
  mpfr_prec_t max_prec = kDefaultMaxPrec;
};

struct StepOutput {
  IVec3 y0;  // completion after the sign flip, before the shifts
  IVec3 y, x_prime;
  std::size_t conv_index = 0;
  Int a, m, ell;
  Rat r, s;  // coordinates of y0 + ell x along x*, x
  bool flipped = false;
};

struct StepCertificate {
  Int H2;                  // ||x* ^ x||^2
  Int det_y;               // det(x*, x, y)
  Int det_x_prime;         // det(x*, x, x')
  Int det_y_x_prime;       // det(y, x, x')
  std::vector<Check> checks;
  std::string a_note;      // set when the choice of a could not be certified minimal
  bool ok() const { return combine(checks) == Status::Pass; }
};

class StepError : public std::runtime_error {
 public:
  StepError(const Check& check)
      : std::runtime_error("step clause '" + check.clause + "' " + to_string(check.status) + ": " + check.lhs +
                           " vs " + check.rhs),
        check_(check) {}
  const Check& check() const { return check_; }

 private:
  Check check_;
};

struct Decomposition {
  Rat r, s;
  int t_sign = 0;
};

// y0 = r x* + s x + t u with u orthogonal to both; r, s exact.
Decomposition decompose_in_basis(const IVec3& y0, const IVec3& x_star, const IVec3& x);

// (x* ^ x, ||x* ^ x||^2); throws GeometryError for parallel inputs.
std::pair<IVec3, Int> unit_normal_sq(const IVec3& a, const IVec3& b);

// One recursive step. Throws StepError naming the first clause that does not
// pass (hypotheses included).
std::pair<StepOutput, StepCertificate> recursive_step(const StepInput& in);

}  // namespace signcert
