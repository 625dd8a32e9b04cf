#include <algorithm>

#include "signcert/verifier/verifier.hpp"

namespace signcert {

namespace {

// s <= sqrt(a) + sqrt(b) for s, a, b >= 0 given as squares.
bool sqrt_le_sum(const Rat& s, const Rat& a, const Rat& b) {
  const Rat d = s - a - b;
  if (d <= 0) return true;
  return d * d <= 4 * a * b;
}

}  // namespace

VperpResult vperp_sandwich_check(const IVec3& U, const IVec3& V, const IVec3& W, const IVec3& x) {
  if (x.is_zero() || U.is_zero() || V.is_zero() || W.is_zero())
    throw std::invalid_argument("vperp_sandwich_check: zero vector");
  if (dot(U, V) != 0 || dot(U, W) != 0) throw std::invalid_argument("vperp_sandwich_check: U not orthogonal to V, W");
  const Int Un = norm_sq(U), Vn = norm_sq(V), Wn = norm_sq(W);
  VperpResult r;
  const Int xu = dot(x, U), dv = det3(x, U, V), dw = det3(x, U, W);
  r.a_sq = Rat(xu * xu, Un);
  r.Av_sq = Rat(dv * dv, Un * Vn);
  r.Aw_sq = Rat(dw * dw, Un * Wn);
  r.Bv_sq = Rat(norm_sq(cross(x, V)), Vn);
  r.Bw_sq = Rat(norm_sq(cross(x, W)), Wn);
  for (Rat* q : {&r.a_sq, &r.Av_sq, &r.Aw_sq, &r.Bv_sq, &r.Bw_sq}) q->canonicalize();

  auto s = [](const Rat& q) { return q.get_str(); };
  r.checks.push_back(tagged(check_true("|x ^ v|^2 = |x.v_perp|^2 + |x.u|^2", r.Bv_sq == r.Av_sq + r.a_sq, s(r.Bv_sq),
                                       s(Rat(r.Av_sq + r.a_sq))),
                            "vperp.identity_v"));
  r.checks.push_back(tagged(check_true("|x ^ w|^2 = |x.w_perp|^2 + |x.u|^2", r.Bw_sq == r.Aw_sq + r.a_sq, s(r.Bw_sq),
                                       s(Rat(r.Aw_sq + r.a_sq))),
                            "vperp.identity_w"));
  const Rat A = std::min(r.Av_sq, r.Aw_sq), B = std::min(r.Bv_sq, r.Bw_sq);
  r.checks.push_back(tagged(check_true("min |x.perp|^2 <= (|x| dist(x,{v,w}))^2", A <= B, s(A), s(B)), "vperp.left"));
  r.checks.push_back(tagged(check_true("|x| dist(x,{v,w}) <= |x.u| + min |x.perp|", sqrt_le_sum(B, r.a_sq, A), s(B),
                                       "(sqrt(" + s(r.a_sq) + ") + sqrt(" + s(A) + "))^2"),
                            "vperp.right"));
  return r;
}

AlphaBeta export_alpha_beta(const DirectionEnclosure& u) {
  if (u.kind != DirectionKind::U) throw std::invalid_argument("export_alpha_beta: needs a U enclosure");
  AlphaBeta out;
  out.anchor = u.anchor_index;
  IVec3 rep = u.rep;
  if (rep[0] < 0) rep = -rep;
  if (u.radius_ub == 0) {
    if (rep[0] == 0) throw std::domain_error("export_alpha_beta: first coordinate is zero");
    out.alpha = Interval::from_rat(Rat(rep[1], rep[0]), 128);
    out.beta = Interval::from_rat(Rat(rep[2], rep[0]), 128);
    return out;
  }
  // Enough bits to resolve the radius.
  const long rbits = static_cast<long>(mpz_sizeinbase(u.radius_ub.get_den_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(u.radius_ub.get_num_mpz_t(), 2));
  const mpfr_prec_t prec = std::clamp<mpfr_prec_t>(rbits + 64, 128, kDefaultMaxPrec);
  // The unit u lies within chord 2r of rep/|rep| (sign chosen), so each
  // coordinate of |rep| u is within e = 2 r |rep| of rep's.
  const Real e = Real::rational(2 * u.radius_ub) * norm(rep);
  const Real r0 = Real::integer(rep[0]);
  const Real b_lo = r0 - e, b_hi = r0 + e;
  const CompareResult sep = certified_sign(b_lo, std::max<mpfr_prec_t>(prec, 4096));
  if (sep.order != Ordering::Greater) throw std::domain_error("export_alpha_beta: first coordinate not separated from 0");
  auto ratio = [&](const Int& c) {
    const Real a = Real::integer(c);
    const Real a_lo = a - e, a_hi = a + e;
    const Real lo = min(min(a_lo / b_lo, a_lo / b_hi), min(a_hi / b_lo, a_hi / b_hi));
    const Real hi = max(max(a_lo / b_lo, a_lo / b_hi), max(a_hi / b_lo, a_hi / b_hi));
    Interval iv(prec);
    mpfr_set(iv.lo().get(), lo.enclose(prec).lo().get(), MPFR_RNDD);
    mpfr_set(iv.hi().get(), hi.enclose(prec).hi().get(), MPFR_RNDU);
    return iv;
  };
  out.alpha = ratio(rep[1]);
  out.beta = ratio(rep[2]);
  return out;
}

AlphaBeta export_alpha_beta(const ConstructionState& st, std::size_t anchor) {
  return export_alpha_beta(enclose_u(st, anchor ? anchor : st.N()));
}

}  // namespace signcert
