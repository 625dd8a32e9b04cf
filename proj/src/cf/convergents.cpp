#include "signcert/cf/convergents.hpp"

#include <functional>

#include "signcert/cf/gap_kernel.hpp"

namespace signcert {

ConvergentTable::ConvergentTable(QuadraticIrrational alpha, Rat C1, std::vector<Int> p, std::vector<Int> q,
                                 std::vector<Int> partial_quotients)
    : alpha_(std::move(alpha)), C1_(std::move(C1)), p_(std::move(p)), q_(std::move(q)),
      a_(std::move(partial_quotients)) {}

namespace {

// Complete quotients (A + B sqrt d) / C of alpha, kept in lowest terms.
struct CompleteQuotient {
  Int A, B, C;
  const Int& d;

  Int floor() const {
    Int t, s = B * B * d;
    mpz_sqrt(t.get_mpz_t(), s.get_mpz_t());
    if (B < 0) t = -t - 1;
    Int r, num = A + t;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), C.get_mpz_t());
    return r;
  }

  // x <- 1 / (x - k)
  void advance(const Int& k) {
    const Int A0 = A - k * C;
    Int nA = C * A0, nB = -C * B, nC = A0 * A0 - B * B * d;
    if (nC < 0) {
      nA = -nA;
      nB = -nB;
      nC = -nC;
    }
    Int g = gcd(gcd(nA, nB), nC);
    A = nA / g;
    B = nB / g;
    C = nC / g;
  }
};

void check_table(const QuadraticIrrational& alpha, const Rat& C1, const std::vector<Int>& p,
                 const std::vector<Int>& q, std::size_t N) {
  auto fail = [](const std::string& what, std::size_t n) {
    throw CfError("convergent table check " + what + " failed at n = " + std::to_string(n));
  };
  if (p[0] != 0 || q[0] != 1) fail("cf1 (p1 = 0, q1 = 1)", 1);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t n = i + 1;
    if (p[i] < 0 || p[i] > q[i]) fail("cf1", n);
    const Int expect = (n % 2 == 1) ? Int(1) : Int(-1);  // (-1)^(n+1)
    if (q[i] * p[i + 1] - p[i] * q[i + 1] != expect) fail("cf2", n);
    // -1 < q_{n+1} (q_n alpha - p_n) < 1
    const Int v = q[i + 1] * q[i];
    const Int u = -q[i + 1] * p[i];
    if (alpha.sign_affine(u + 1, v) <= 0 || alpha.sign_affine(u - 1, v) >= 0) fail("cf3", n);
    if (!(q[i] < q[i + 1]) || Rat(q[i + 1]) > C1 * q[i]) fail("cf4", n);
  }
}

ConvergentTable expand(const QuadraticIrrational& alpha, const Rat& C1,
                       const std::function<bool(std::size_t, const Int&)>& done, std::size_t max_len) {
  alpha.validate();
  CompleteQuotient x{alpha.a, alpha.b, alpha.c, alpha.d};
  std::vector<Int> p, q, a;
  Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;  // standard seeds h_{-1}, h_{-2}, k_{-1}, k_{-2}
  for (;;) {
    const Int ak = x.floor();
    x.advance(ak);
    Int h = ak * h1 + h2, k = ak * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    a.push_back(ak);
    p.push_back(h);
    q.push_back(k);
    // keep one extra entry so cf2..cf4 can be checked at the last stored n
    if (q.size() >= 2 && done(q.size() - 1, q[q.size() - 2])) break;
    if (q.size() > max_len + 1) throw CfError("convergent table exceeds max length");
  }
  const std::size_t N = q.size() - 1;
  check_table(alpha, C1, p, q, N);
  p.pop_back();
  q.pop_back();
  a.pop_back();
  return ConvergentTable(alpha, C1, std::move(p), std::move(q), std::move(a));
}

}  // namespace

ConvergentTable convergents(const QuadraticIrrational& alpha, std::size_t N, const Rat& C1) {
  if (N < 2) throw CfError("convergents: need N >= 2");
  return expand(alpha, C1, [N](std::size_t n, const Int&) { return n >= N; }, N + 1);
}

ConvergentTable convergents_until(const QuadraticIrrational& alpha, const Int& bound, const Rat& C1,
                                  std::size_t max_len) {
  return expand(
      alpha, C1, [&bound](std::size_t n, const Int& qn) { return n >= 2 && qn >= bound; }, max_len);
}

BadApproxCertificate certify_bad_approx(const QuadraticIrrational& alpha, const Rat& C1, const Int& Q,
                                        const Int& brute_force_limit) {
  if (Q < 1) throw CfError("certify_bad_approx: Q must be >= 1");
  BadApproxCertificate cert;
  cert.C1 = C1;
  cert.Q = Q;
  cert.brute_force_limit = Q < brute_force_limit ? Q : brute_force_limit;
  const Int r = C1.get_num(), s = C1.get_den();

  // sign of q alpha - p
  auto side = [&](const Int& q, const Int& p) { return alpha.sign_affine(-p, q); };
  // Checks r q |q alpha - p| >= s, i.e. q |q alpha - p| >= 1 / C1.
  auto passes = [&](const Int& q, const Int& p) {
    const Int v = r * q * q, u = -r * q * p;
    return side(q, p) > 0 ? alpha.sign_affine(u - s, v) >= 0 : alpha.sign_affine(u + s, v) <= 0;
  };
  bool have_min = false;
  int min_sign = 0;
  auto consider = [&](const Int& q, const Int& p) {
    const int sg = side(q, p);
    if (!passes(q, p) && !cert.violation) cert.violation = std::make_pair(q, p);
    if (!have_min) {
      have_min = true;
      cert.argmin_q = q;
      cert.argmin_p = p;
      min_sign = sg;
      return;
    }
    // sign of sg q (q alpha - p) - min_sign q* (q* alpha - p*)
    const Int& qs = cert.argmin_q;
    const Int& ps = cert.argmin_p;
    const Int v = sg * q * q - min_sign * qs * qs;
    const Int u = -sg * q * p + min_sign * qs * ps;
    if (alpha.sign_affine(u, v) < 0) {
      cert.argmin_q = q;
      cert.argmin_p = p;
      min_sign = sg;
    }
  };

  for (Int q = 1; q <= cert.brute_force_limit; ++q) consider(q, alpha.nearest_multiple(q));

  // Best approximations: for q_k <= q < q_{k+1}, |q alpha - p| >= |q_k alpha - p_k|.
  const ConvergentTable table = convergents_until(alpha, Q + 1, C1);
  for (std::size_t n = 1; n <= table.size() && table.q(n) <= Q; ++n) {
    consider(table.q(n), table.p(n));
    ++cert.convergents_checked;
  }

  const Real val = Real::integer(cert.argmin_q) *
                   abs(Real::integer(cert.argmin_q) * alpha.value() - Real::integer(cert.argmin_p));
  cert.min_value = val.enclose(128);

  Int A, B, C;
  alpha.minimal_polynomial(A, B, C);
  const Real alg = Real::integer(abs(A)) *
                   (Real::integer(2 * abs(alpha.b)) * Real::sqrt_of(alpha.d) / Real::integer(alpha.c) +
                    Real::rational(Rat(1, 2)));
  cert.algebraic_C1_upper = alg.enclose(128).hi_rat();
  cert.algebraic_ok = cert.algebraic_C1_upper <= C1;
  cert.ok = !cert.violation.has_value();
  return cert;
}

std::size_t locate_n(const Real& T, const ConvergentTable& table, mpfr_prec_t max_prec) {
  auto less_than_q = [&](std::size_t n) {
    const auto c = certified_compare(T, Real::integer(table.q(n)), max_prec);
    if (c.order == Ordering::Undecided) throw CfError("locate_n: comparison with q_" + std::to_string(n) + " undecided");
    return c.order == Ordering::Less;
  };
  const auto lo = certified_compare(T, Real::from_long(1), max_prec);
  if (lo.order == Ordering::Undecided) throw CfError("locate_n: comparison with q_1 undecided");
  if (lo.order == Ordering::Less) throw CfError("locate_n: T < q_1");
  if (table.size() < 2 || !less_than_q(table.size())) throw CfError("locate_n: convergent table exhausted");
  std::size_t a = 2, b = table.size();  // smallest n in [a, b] with T < q_n
  while (a < b) {
    const std::size_t mid = a + (b - a) / 2;
    if (less_than_q(mid)) b = mid;
    else a = mid + 1;
  }
  return a;
}

GapReport check_gap_lemma(const ConvergentTable& table, std::size_t n, const Rat& C1, simd::Isa isa) {
  if (n < 2 || n > table.size()) throw CfError("check_gap_lemma: n out of range");
  GapReport rep;
  rep.n = n;
  rep.qn = table.q(n);
  rep.pn = table.p(n);
  rep.C1 = C1;
  if (rep.qn >= 30000) throw CfError("check_gap_lemma: q_n too large for the int32 kernel");
  const std::int32_t qn = static_cast<std::int32_t>(rep.qn.get_si());
  const std::int32_t pn = static_cast<std::int32_t>(rep.pn.get_si());
  const auto kernel =
      simd::resolve(isa) == simd::Isa::Avx2 ? kernels::min_abs_affine_avx2 : kernels::min_abs_affine_scalar;

  // (q, p) -> (-q, -p) flips the sign of q p_n - p q_n, so q > 0 suffices.
  bool have = false;
  rep.boundary_ok = true;
  for (std::int32_t q = 1; q < qn; ++q) {
    // p runs from -q_n to q_n: value q p_n - p q_n starts at q p_n + q_n^2
    const std::int32_t mn = kernel(q * pn + qn * qn, qn, 2 * qn + 1);
    rep.pairs_checked += static_cast<std::uint64_t>(2 * qn + 1);
    // Beyond |p| = q_n the value keeps its sign and grows in magnitude.
    if (!(q * pn - qn * qn < 0 && q * pn + qn * qn > 0)) rep.boundary_ok = false;
    Rat ratio(Int(mn) * q, Int(qn));
    ratio.canonicalize();
    const bool bad = ratio * 2 * C1 < 1;
    if (!have || ratio < rep.min_ratio || bad) {
      std::int32_t best_p = -qn;
      for (std::int32_t p = -qn; p <= qn; ++p)
        if (std::abs(q * pn - p * qn) == mn) {
          best_p = p;
          break;
        }
      if (bad) rep.violations.emplace_back(Int(q), Int(best_p));
      if (!have || ratio < rep.min_ratio) {
        rep.min_ratio = ratio;
        rep.argmin_q = q;
        rep.argmin_p = best_p;
        have = true;
      }
    }
  }
  return rep;
}

}  // namespace signcert
