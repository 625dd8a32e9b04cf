#include "signcert/stepper/step.hpp"

namespace signcert {

Real y_value(const YSpec& y) {
  if (const Rat* q = std::get_if<Rat>(&y)) return Real::rational(*q);
  if (const auto* r = std::get_if<SqrtPowGamma>(&y))
    return pow(Real::integer(r->S), Real::golden_ratio() / Real::from_long(2));
  return pow(Real::integer(std::get<PowGamma>(y).X), Real::golden_ratio());
}

Real y_squared(const YSpec& y) {
  if (const Rat* q = std::get_if<Rat>(&y)) return Real::rational(*q * *q);
  if (const auto* r = std::get_if<SqrtPowGamma>(&y)) return pow(Real::integer(r->S), Real::golden_ratio());
  const Int& X = std::get<PowGamma>(y).X;
  return pow(Real::integer(X * X), Real::golden_ratio());
}

std::string to_string(const YSpec& y) {
  if (const Rat* q = std::get_if<Rat>(&y)) return q->get_str();
  if (const auto* r = std::get_if<SqrtPowGamma>(&y)) return "sqrt(" + r->S.get_str() + ")^gamma";
  return std::get<PowGamma>(y).X.get_str() + "^gamma";
}

Decomposition decompose_in_basis(const IVec3& y0, const IVec3& x_star, const IVec3& x) {
  const Int g11 = norm_sq(x_star), g12 = dot(x_star, x), g22 = norm_sq(x);
  const Int D = g11 * g22 - g12 * g12;
  if (D == 0) throw std::logic_error("decompose_in_basis: singular Gram matrix");
  const Int b1 = dot(y0, x_star), b2 = dot(y0, x);
  const Int rD = b1 * g22 - b2 * g12, sD = g11 * b2 - g12 * b1;
  // D (y0 - r x* - s x) must be orthogonal to x* and x
  const IVec3 res = D * y0 - rD * x_star - sD * x;
  if (dot(res, x_star) != 0 || dot(res, x) != 0) throw std::logic_error("decompose_in_basis: residual not orthogonal");
  Decomposition d;
  d.r = Rat(rD, D);
  d.s = Rat(sD, D);
  d.r.canonicalize();
  d.s.canonicalize();
  const Int det = det3(x_star, x, y0);
  if (det != 1 && det != -1) throw GeometryError("decompose_in_basis: (x*, x, y0) is not a basis");
  d.t_sign = det > 0 ? 1 : -1;
  return d;
}

std::pair<IVec3, Int> unit_normal_sq(const IVec3& a, const IVec3& b) {
  IVec3 rep = cross(a, b);
  if (rep.is_zero()) throw GeometryError("unit_normal_sq: parallel inputs");
  Int n = norm_sq(rep);
  return {std::move(rep), std::move(n)};
}

namespace {

Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int mpfr_ceil_int(const Mpfr& v) {
  Int r;
  mpfr_get_z(r.get_mpz_t(), v.get(), MPFR_RNDU);
  return r;
}

// ceil(Q) if some working precision pins it down; otherwise ceil of the
// final upper endpoint and a note.
Int certified_ceil(const Real& Q, mpfr_prec_t max_prec, std::string& note) {
  if (Q.exact()) return ceil_rat(*Q.exact());
  std::optional<Interval> enc;
  for (mpfr_prec_t p = kStartPrec; p <= max_prec; p *= 2) {
    try {
      Interval e = Q.enclose(p);
      enc = enc ? intersect(*enc, e) : e;
    } catch (const std::domain_error&) {
      continue;
    }
    const Int lo = mpfr_ceil_int(enc->lo()), hi = mpfr_ceil_int(enc->hi());
    if (lo == hi) return lo;
  }
  if (!enc) throw std::domain_error("certified_ceil: no enclosure");
  note = "minimal a undecided at max_prec; took the larger candidate";
  return mpfr_ceil_int(enc->hi());
}

// Nearest integer, ties toward zero.
Int nearest_toward_zero(const Rat& v) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  const Rat frac = v - f;
  if (frac < Rat(1, 2)) return f;
  if (frac > Rat(1, 2)) return f + 1;
  return f >= 0 ? f : f + 1;
}

void require(const Check& c) {
  if (!c.passed()) throw StepError(c);
}

}  // namespace

std::pair<StepOutput, StepCertificate> recursive_step(const StepInput& in) {
  if (in.table == nullptr) throw std::invalid_argument("recursive_step: missing convergent table");
  const ConvergentTable& table = *in.table;
  const Rat& C1 = table.C1();
  const mpfr_prec_t mp = in.max_prec;
  StepOutput out;
  StepCertificate cert;
  auto& checks = cert.checks;

  const Real Y = y_value(in.Y);
  const Real norm_xs = norm(in.x_star), norm_x = norm(in.x);
  const Real Xp = Real::integer(in.X_prime);

  checks.push_back(check_true("(x*, x) primitive pair", is_primitive_pair(in.x_star, in.x)));
  require(checks.back());
  checks.push_back(check_le("2(|x*| + |x|) <= Y", Real::from_long(2) * (norm_xs + norm_x), Y, mp));
  require(checks.back());
  checks.push_back(check_le("Y <= X'", Y, Xp, mp));
  require(checks.back());

  // y0 completes (x*, x) to a basis; orient it and centre s.
  const auto [normal, H2] = unit_normal_sq(in.x_star, in.x);
  cert.H2 = H2;
  IVec3 y0 = complete_to_basis(in.x_star, in.x);
  Decomposition d = decompose_in_basis(y0, in.x_star, in.x);
  if (d.t_sign < 0) {
    y0 = -y0;
    d.r = -d.r;
    d.s = -d.s;
    out.flipped = true;
  }
  out.y0 = y0;
  out.ell = -ceil_rat(d.s - Rat(1, 2));  // s + ell in (-1/2, 1/2]
  out.r = d.r;
  out.s = d.s + out.ell;

  // smallest a with (a + r)|x*| >= Y + |x|/2 + 1
  const Real rhs_a = Y + norm_x / Real::from_long(2) + Real::from_long(1);
  const Real Q = rhs_a / norm_xs - Real::rational(out.r);
  out.a = certified_ceil(Q, mp, cert.a_note);

  try {
    out.conv_index = locate_n(Real::from_long(2) * Xp / Y, table, mp);
  } catch (const CfError& e) {
    Check c = check_true("q_{n-1} <= 2X'/Y < q_n", false, e.what());
    c.status = Status::Undecided;
    checks.push_back(c);
    throw StepError(c);
  }
  const std::size_t n = out.conv_index;
  const Int& qn = table.q(n);
  const Int& pn = table.p(n);
  out.m = nearest_toward_zero(-out.s * qn);

  out.y = y0 + out.ell * in.x + out.a * in.x_star;
  out.x_prime = qn * out.y + pn * in.x_star + out.m * in.x;

  // Exact bookkeeping.
  cert.det_y = det3(in.x_star, in.x, out.y);
  cert.det_x_prime = det3(in.x_star, in.x, out.x_prime);
  cert.det_y_x_prime = det3(out.y, in.x, out.x_prime);
  checks.push_back(check_eq("det(x*, x, y) = 1", cert.det_y, Int(1)));
  checks.push_back(check_eq("det(x*, x, x') = q_n", cert.det_x_prime, qn));
  checks.push_back(check_eq("det(y, x, x') = -p_n", cert.det_y_x_prime, -pn));
  checks.push_back(check_true("(x, x') primitive pair", is_primitive_pair(in.x, out.x_prime)));
  checks.push_back(check_true("|s| <= 1/2", abs(out.s) <= Rat(1, 2), out.s.get_str(), "1/2"));
  const Rat smq = out.s * qn + out.m;
  checks.push_back(check_true("|s q_n + m| <= 1/2", abs(smq) <= Rat(1, 2), smq.get_str(), "1/2"));
  const IVec3 normal_next = cross(in.x, out.x_prime);
  checks.push_back(check_true("(x* ^ x) ^ (x ^ x') = q_n x", cross(normal, normal_next) == qn * in.x));
  checks.push_back(check_eq("(q_n |x|)^2 = |(x* ^ x) ^ (x ^ x')|^2", qn * qn * norm_sq(in.x),
                            norm_sq(cross(normal, normal_next))));
  if (cert.a_note.empty()) {
    checks.push_back(check_lt("a is minimal", (Real::integer(out.a - 1) + Real::rational(out.r)) * norm_xs, rhs_a, mp));
  }

  // Norm sandwiches, on squares.
  const Real Y2 = y_squared(in.Y);
  const Real ny2 = Real::integer(norm_sq(out.y)), nxp2 = Real::integer(norm_sq(out.x_prime));
  checks.push_back(check_le("Y <= |y|", Y2, ny2, mp));
  checks.push_back(check_le("|y| <= 2Y", ny2, Real::from_long(4) * Y2, mp));
  checks.push_back(check_le("X' <= |x'|", Real::integer(in.X_prime * in.X_prime), nxp2, mp));
  checks.push_back(
      check_le("|x'| <= 5 C1 X'", nxp2, Real::rational(25 * C1 * C1 * in.X_prime * in.X_prime), mp));

  // Distance bounds.
  const Real H = Real::sqrt_of(H2);
  const Real two_c1 = Real::rational(2 * C1);
  checks.push_back(check_le("dist(x*, x') <= |x|/(2X') + 2C1/(Y |x*| |x| dist(x*, x))",
                            proj_dist(in.x_star, out.x_prime),
                            norm_x / (Real::from_long(2) * Xp) + two_c1 / (Y * H), mp));
  checks.push_back(check_le("dist(u, u') <= 2C1/(Y |x*| |x| dist(x*, x) dist(x, x'))",
                            proj_dist(normal, normal_next), two_c1 / (Y * H * proj_dist(in.x, out.x_prime)), mp));

  if (const Check* bad = first_not_passed(checks)) throw StepError(*bad);
  return {out, cert};
}

}  // namespace signcert
