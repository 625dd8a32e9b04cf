#include <atomic>
#include <thread>

#include "signcert/verifier/verifier.hpp"

namespace signcert {

namespace {

Real num(long v) { return Real::from_long(v); }

struct BoxChunk {
  std::uint64_t enumerated = 0, in_range = 0, passed = 0, identities = 0;
  std::uint64_t branch_count[3] = {0, 0, 0};
  std::vector<std::size_t> anchor_used;
  std::vector<BoxItem> violations, undecided;
  std::vector<Check> identity_failures;
};

}  // namespace

std::string to_string(BoxBranch b) {
  switch (b) {
    case BoxBranch::OffPlane: return "off_plane";
    case BoxBranch::InPlane: return "in_plane";
    case BoxBranch::Multiple: return "multiple";
  }
  return "?";
}

Status BoxReport::status() const {
  if (!violations.empty() || !identity_failures.empty()) return Status::Fail;
  return undecided.empty() ? Status::Pass : Status::Undecided;
}

BoxReport coeff_box(const ConstructionState& st, std::size_t i, long K, unsigned threads, mpfr_prec_t mp) {
  const std::size_t N = st.N();
  if (i < 2 || i + 2 > N) throw std::invalid_argument("coeff_box: needs 2 <= i <= N-2");
  if (K < 1) throw std::invalid_argument("coeff_box: K must be positive");

  const IVec3 &y = st.y[i], &xm = st.x[i - 1], &xi = st.x[i], &xn = st.x[i + 1];
  const std::size_t n = st.steps[i - 1].out.conv_index;
  const Int &pn = st.table.p(n), &qn = st.table.q(n);
  const Int S1 = st.schedule.X_sq[1], lo_sq = st.schedule.X_sq[i], hi_sq = st.schedule.X_sq[i + 1];
  const Real g = Real::golden_ratio();
  const Real scale = pow(st.X(1), num(3)) * st.X(i - 1);

  std::vector<DirectionEnclosure> U;  // anchors N, N-1, .., i
  for (std::size_t j = N; j >= i; --j) U.push_back(enclose_u(st, j));
  const DirectionEnclosure V = enclose_vw(st, DirectionKind::V), W = enclose_vw(st, DirectionKind::W);

  auto run_q = [&](long q) {
    BoxChunk c;
    c.anchor_used.assign(U.size(), 0);
    for (long p = -K; p <= K; ++p)
      for (long r = -K; r <= K; ++r) {
        if (q == 0 && p == 0 && r == 0) continue;
        ++c.enumerated;
        const IVec3 x = Int(q) * y + Int(p) * xm + Int(r) * xi;
        const Int d1 = det3(x, xm, xi), d2 = det3(x, xi, xn), e2 = -(Int(q) * pn - Int(p) * qn);
        c.identities += 2;
        if (d1 != q)
          c.identity_failures.push_back(tagged(check_eq("det(x, x_{i-1}, x_i) = q", d1, Int(q)), "box.det_prev"));
        if (d2 != e2)
          c.identity_failures.push_back(
              tagged(check_eq("det(x, x_i, x_{i+1}) = -(q p_n - p q_n)", d2, e2), "box.det_next"));

        const Int n2S = norm_sq(x) * S1;
        if (n2S < lo_sq || n2S >= hi_sq) continue;
        ++c.in_range;
        BoxItem item;
        item.q = q;
        item.p = p;
        item.r = r;
        item.x = x;
        item.branch = q != 0 ? BoxBranch::OffPlane : p != 0 ? BoxBranch::InPlane : BoxBranch::Multiple;
        ++c.branch_count[static_cast<int>(item.branch)];
        const Real den = scale * pow(norm(x), g);
        const bool unit = item.branch == BoxBranch::OffPlane;
        const Real rhs = (unit ? num(1) : min(dist_upper(x, V), dist_upper(x, W))) / den;
        bool ok = false;
        for (std::size_t a = 0; a < U.size() && !ok; ++a) {
          item.check = check_ge("|x.u| >= rhs", x_dot_u_lower(x, U[a]), rhs, mp);
          if (item.check.passed()) {
            ok = true;
            ++c.anchor_used[a];
          }
        }
        if (ok) {
          ++c.passed;
          continue;
        }
        Real upper = x_dot_u_upper(x, U[0]);
        for (std::size_t a = 1; a < U.size(); ++a) upper = min(upper, x_dot_u_upper(x, U[a]));
        const Real rhs_lo = (unit ? num(1) : min(dist_lower(x, V), dist_lower(x, W))) / den;
        Check v = check_lt("|x.u| < rhs", upper, rhs_lo, mp);
        if (v.passed()) {
          item.check = tagged(std::move(v), "box.violation", static_cast<int>(i));
          c.violations.push_back(std::move(item));
        } else {
          item.check = tagged(std::move(item.check), "box.undecided", static_cast<int>(i));
          c.undecided.push_back(std::move(item));
        }
      }
    return c;
  };

  std::vector<BoxChunk> chunks(static_cast<std::size_t>(2 * K + 1));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long t; (t = next++) < 2 * K + 1;) chunks[static_cast<std::size_t>(t)] = run_q(t - K);
  };
  const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(2 * K + 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BoxReport rep;
  rep.i = i;
  rep.K = K;
  rep.anchor_used.assign(U.size(), 0);
  for (auto& c : chunks) {
    rep.enumerated += c.enumerated;
    rep.in_range += c.in_range;
    rep.passed += c.passed;
    rep.identities += c.identities;
    for (int b = 0; b < 3; ++b) rep.branch_count[b] += c.branch_count[b];
    for (std::size_t a = 0; a < U.size(); ++a) rep.anchor_used[a] += c.anchor_used[a];
    for (auto& v : c.violations) rep.violations.push_back(std::move(v));
    for (auto& v : c.undecided) rep.undecided.push_back(std::move(v));
    for (auto& v : c.identity_failures) rep.identity_failures.push_back(std::move(v));
  }
  return rep;
}

}  // namespace signcert
