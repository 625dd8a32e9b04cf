#include "signcert/verifier/slab.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "signcert/verifier/slab_kernel.hpp"

namespace signcert {

namespace {

Real num(long v) { return Real::from_long(v); }
Real rat(const Rat& q) { return Real::rational(q); }

// Points with |a|, |b| <= 2^20 keep the double line solve within 2^-29 of
// the real one; kEta leaves a wide margin.
constexpr long kMaxB = 1L << 20;
constexpr double kEta = 0x1p-20;
constexpr double kDotSlack = 0x1p-46;
constexpr std::size_t kBatch = 1024;
constexpr long kBlock = 8;

double round_up(const Rat& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
  const double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

double nearest(const Real& x) {
  const Interval e = x.enclose(128);
  return mpfr_get_d(e.lo().get(), MPFR_RNDN);
}

struct IvContext {
  const ConstructionState* st = nullptr;
  std::vector<DirectionEnclosure> U;  // anchors N, N-1, .., 1
  DirectionEnclosure V, W;
  Real g;

  explicit IvContext(const ConstructionState& s) : st(&s), g(Real::golden_ratio()) {
    if (s.N() < 3) throw std::invalid_argument("condition (iv) checks need N >= 3");
    for (std::size_t j = s.N(); j >= 1; --j) U.push_back(enclose_u(s, j));
    V = enclose_vw(s, DirectionKind::V);
    W = enclose_vw(s, DirectionKind::W);
  }

  Check decide(const IVec3& x, mpfr_prec_t mp, double* lower) const {
    const Real nx = norm(x);
    const Real den = st->plan.psi(nx) * pow(nx, g);
    const Real rhs = min(dist_upper(x, V), dist_upper(x, W)) / den;
    double best = -INFINITY;
    Check c;
    for (const auto& u : U) {
      const Real lo = x_dot_u_lower(x, u);
      best = std::max(best, lo.enclose(128).lo_double());
      c = check_ge("|x.u| psi(|x|) |x|^gamma >= dist(x,{v,w})", lo, rhs, mp);
      if (c.passed()) {
        c.note = "anchor " + std::to_string(u.anchor_index);
        break;
      }
    }
    if (lower) *lower = best;
    if (c.passed()) return c;
    Real upper = x_dot_u_upper(x, U[0]);
    for (std::size_t a = 1; a < U.size(); ++a) upper = min(upper, x_dot_u_upper(x, U[a]));
    const Real rhs_lo = min(dist_lower(x, V), dist_lower(x, W)) / den;
    Check v = check_lt("|x.u| < dist(x,{v,w}) / (psi(|x|) |x|^gamma)", upper, rhs_lo, mp);
    if (v.passed()) {
      v.status = Status::Fail;
      return v;
    }
    c.status = Status::Undecided;
    return c;
  }
};

struct Block {
  std::uint64_t lines = 0, candidates = 0, fast = 0, exact = 0;
  std::vector<ScanItem> violations, undecided;
  double min_lower = INFINITY;
  IVec3 min_at;
};

}  // namespace

Status ScanReport::status() const {
  if (!violations.empty()) return Status::Fail;
  if (below_threshold) return Status::Pass;
  if (!guard.passed() || !undecided.empty()) return Status::Undecided;
  return Status::Pass;
}

Check certify_iv_point(const ConstructionState& st, const IVec3& x, mpfr_prec_t mp, double* lower) {
  if (x.is_zero()) throw std::invalid_argument("certify_iv_point: x = 0");
  return IvContext(st).decide(x, mp, lower);
}

ScanReport slab_scan_iv(const ConstructionState& st, const SlabOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.K_near < 2 || opt.K_near % 2) throw std::invalid_argument("K_near must be even and >= 2");
  if (opt.B < 0 || opt.B > kMaxB) throw std::invalid_argument("slab B must lie in [0, 2^20]");
  if (opt.buckets < 2) throw std::invalid_argument("slab needs at least 2 buckets");
  const IvContext ctx(st);
  const Schedule& s = st.schedule;
  const Rat Cp_sq(s.X_sq[2], s.X_sq[1]);
  const Real Cp = Real::sqrt_of(Cp_sq);

  ScanReport rep;
  rep.C_prime = describe(Cp);
  rep.B = opt.B.get_str();
  rep.skipped_clauses = opt.skipped_clauses;
  const simd::Isa isa = simd::resolve(opt.isa);
  rep.isa = simd::to_string(isa);
  rep.threads = std::max(1u, opt.threads);
  rep.u_anchor = st.N();
  auto finish = [&] {
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };

  Int n2_min = Cp_sq.get_num() / Cp_sq.get_den();
  if (n2_min * Cp_sq.get_den() < Cp_sq.get_num()) ++n2_min;
  const Rat B2 = opt.B * opt.B;
  const Int n2_max = B2.get_num() / B2.get_den();
  rep.n2_min = n2_min;
  rep.n2_max = n2_max;
  if (B2 < Cp_sq || n2_max < n2_min) {
    rep.below_threshold = true;
    rep.guard = tagged(check_true("C' <= B", false, describe(Cp), rep.B), "slab.range");
    rep.guard.status = Status::Pass;
    rep.guard.note = "below threshold, nothing to scan";
    return finish();
  }

  // Guard: off the K_near nearest layers |x.u| >= |u_k| K/2 - 2 B r_U, which
  // must beat the largest right side 1/(psi(C') C'^gamma).
  const DirectionEnclosure& U = ctx.U[0];
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j)
    if (abs(U.rep[j]) > abs(U.rep[k])) k = j;
  rep.k_axis = k;
  const Real nrep = norm(U.rep);
  const Real K2 = rat(Rat(opt.K_near, 2));
  rep.guard = tagged(check_gt("|u_k| K/2 - 2 B r_U > 1/(psi(C') C'^gamma)",
                              abs(Real::integer(U.rep[k])) / nrep * K2 - num(2) * rat(opt.B * U.radius_ub),
                              num(1) / (st.plan.psi(Cp) * pow(Cp, ctx.g)), opt.max_prec),
                     "slab.guard");
  if (!rep.guard.passed()) return finish();

  kernels::SlabFilterParams P;
  for (std::size_t j = 0; j < 3; ++j) {
    P.u[j] = nearest(Real::integer(U.rep[j]) / nrep);
    P.v[j] = nearest(Real::integer(ctx.V.rep[j]) / norm(ctx.V.rep));
    P.w[j] = nearest(Real::integer(ctx.W.rep[j]) / norm(ctx.W.rep));
  }
  P.u_slack = round_up(Rat(kDotSlack) + 2 * U.radius_ub) * (1 + 0x1p-40);
  P.v_slack = round_up(Rat(kDotSlack) + ctx.V.radius_ub);
  P.w_slack = round_up(Rat(kDotSlack) + ctx.W.radius_ub);

  // F[b] bounds psi(|x|)|x|^gamma from below for every |x|^2 that can land
  // in bucket b, allowing the computed index to be one too high.
  const long n2lo = n2_min.get_si(), n2hi = n2_max.get_si();
  const double range = static_cast<double>(n2hi - n2lo + 1);
  const int nb = static_cast<int>(opt.buckets);
  std::vector<double> F(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    long left = n2lo;
    if (b >= 1) left = n2lo + static_cast<long>(std::floor((b - 1) * (range / nb)));
    left = std::max(n2lo, left - 1);
    const Real n = Real::sqrt_of(Int(left));
    F[static_cast<std::size_t>(b)] = (st.plan.psi(n) * pow(n, ctx.g)).enclose(128).lo_double();
  }
  P.F = F.data();
  P.n2_min = static_cast<double>(n2lo);
  P.bucket_scale = nb / range;
  P.buckets = nb;
  auto kernel = isa == simd::Isa::Avx2 ? kernels::slab_filter_avx2 : kernels::slab_filter_scalar;

  const std::size_t o1 = (k + 1) % 3, o2 = (k + 2) % 3;
  const double ua = P.u[o1], ub = P.u[o2], uk = P.u[k];
  const long Bi = static_cast<long>(opt.B.get_num().get_si() / opt.B.get_den().get_si());
  const double half = opt.K_near / 2.0;

  auto run_block = [&](long a0) {
    Block blk;
    std::vector<double> cx, cy, cz, lo;
    std::vector<std::uint8_t> pass;
    cx.reserve(kBatch);
    cy.reserve(kBatch);
    cz.reserve(kBatch);
    auto flush = [&] {
      const std::size_t n = cx.size();
      if (!n) return;
      pass.resize(n);
      lo.resize(n);
      double* c[3] = {cx.data(), cy.data(), cz.data()};
      kernel(P, c[0], c[1], c[2], n, pass.data(), lo.data());
      for (std::size_t j = 0; j < n; ++j) {
        double l = lo[j];
        if (pass[j]) {
          ++blk.fast;
          if (l >= blk.min_lower) continue;
        }
        const IVec3 x{Int(static_cast<long>(cx[j])), Int(static_cast<long>(cy[j])), Int(static_cast<long>(cz[j]))};
        if (!pass[j]) {
          Check c2 = ctx.decide(x, opt.max_prec, &l);
          if (c2.status == Status::Pass)
            ++blk.exact;
          else if (c2.status == Status::Fail)
            blk.violations.push_back({x, std::move(c2)});
          else
            blk.undecided.push_back({x, std::move(c2)});
        }
        if (l < blk.min_lower) {
          blk.min_lower = l;
          blk.min_at = x;
        }
      }
      cx.clear();
      cy.clear();
      cz.clear();
    };
    for (long a = a0; a < std::min(a0 + kBlock, Bi + 1); ++a) {
      const long rem = n2hi - a * a;
      if (rem < 0) continue;
      const long bmax = static_cast<long>(Int(sqrt(Int(rem))).get_si());
      for (long b = -bmax; b <= bmax; ++b) {
        ++blk.lines;
        const double t = -(ua * a + ub * b) / uk;
        const long zlo = static_cast<long>(std::ceil(t - half - kEta)), zhi = static_cast<long>(std::floor(t + half + kEta));
        for (long z = zlo; z <= zhi; ++z) {
          const long n2 = a * a + b * b + z * z;
          if (n2 < n2lo || n2 > n2hi) continue;
          ++blk.candidates;
          double c[3];
          c[o1] = static_cast<double>(a);
          c[o2] = static_cast<double>(b);
          c[k] = static_cast<double>(z);
          cx.push_back(c[0]);
          cy.push_back(c[1]);
          cz.push_back(c[2]);
          if (cx.size() == kBatch) flush();
        }
      }
    }
    flush();
    return blk;
  };

  const long nblocks = (2 * Bi + 1 + kBlock - 1) / kBlock;
  std::vector<Block> blocks(static_cast<std::size_t>(nblocks));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long t; (t = next++) < nblocks;) blocks[static_cast<std::size_t>(t)] = run_block(-Bi + t * kBlock);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < rep.threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  rep.min_lower = INFINITY;
  for (auto& b : blocks) {
    rep.lines += b.lines;
    rep.candidates += b.candidates;
    rep.fast_passed += b.fast;
    rep.exact_passed += b.exact;
    for (auto& v : b.violations) rep.violations.push_back(std::move(v));
    for (auto& v : b.undecided) rep.undecided.push_back(std::move(v));
    if (b.min_lower < rep.min_lower) {
      rep.min_lower = b.min_lower;
      rep.min_lower_at = b.min_at;
    }
  }
  rep.all_lower_positive = rep.candidates == 0 || rep.min_lower > 0;
  return finish();
}

}  // namespace signcert
