#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "signcert/cf/convergents.hpp"
#include "signcert/verifier/verifier.hpp"

namespace signcert {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Small deterministic generator for one case; std distributions are not
// portable across standard libraries.
struct CaseRng {
  std::uint64_t s;
  std::uint64_t next() { return s = splitmix(s); }
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  IVec3 vec(long R) {
    for (;;) {
      IVec3 v{Int(uniform(-R, R)), Int(uniform(-R, R)), Int(uniform(-R, R))};
      if (!v.is_zero()) return v;
    }
  }
};

// "" on success, otherwise a description of the failure.
using CaseFn = std::function<std::string(CaseRng&)>;

// d(a,c) <= d(a,b) + d(b,c) on squares: s <= (sqrt x + sqrt y)^2.
std::string triangle_case(CaseRng& g) {
  const IVec3 a = g.vec(1000), b = g.vec(1000), c = g.vec(1000);
  const Rat s = proj_dist_sq(a, c).value, x = proj_dist_sq(a, b).value, y = proj_dist_sq(b, c).value;
  const Rat d = s - x - y;
  if (d <= 0 || d * d <= 4 * x * y) return "";
  return "a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string();
}

std::string lagrange_case(CaseRng& g) {
  const IVec3 a = g.vec(1 << 20), b = g.vec(1 << 20);
  const Int d = dot(a, b);
  const Int lhs = norm_sq(cross(a, b)), rhs = norm_sq(a) * norm_sq(b) - d * d;
  if (lhs != rhs) return "a=" + a.to_string() + " b=" + b.to_string();
  Rat q(lhs, norm_sq(a) * norm_sq(b));
  q.canonicalize();
  if (proj_dist_sq(a, b).value != q) return "dist a=" + a.to_string() + " b=" + b.to_string();
  return "";
}

std::string primitive_case(CaseRng& g) {
  const IVec3 a = g.vec(12), b = g.vec(12);
  const bool p = is_primitive_pair(a, b);
  const bool by_cross = content(cross(a, b)) == 1;
  const bool by_divisors = elementary_divisors({a, b}) == std::vector<Int>{1, 1};
  bool by_basis = false;
  try {
    by_basis = det3(a, b, complete_to_basis(a, b)) == 1;
  } catch (const GeometryError&) {
  }
  if (p == by_cross && p == by_divisors && p == by_basis) return "";
  return "a=" + a.to_string() + " b=" + b.to_string();
}

std::string vperp_case(CaseRng& g) {
  const IVec3 U = g.vec(50);
  IVec3 V, W;
  do V = cross(U, g.vec(50));
  while (V.is_zero());
  do W = cross(U, g.vec(50));
  while (W.is_zero());
  const IVec3 x = g.vec(1000);
  const VperpResult r = vperp_sandwich_check(U, V, W, x);
  const Int nx = norm_sq(x);
  if (r.status() != Status::Pass) return "x=" + x.to_string() + " U=" + U.to_string();
  // |x| dist(x, v) against the distance function itself.
  if (r.Bv_sq != proj_dist_sq(x, V).value * nx || r.Bw_sq != proj_dist_sq(x, W).value * nx)
    return "dist x=" + x.to_string();
  return "";
}

PropertySuite run_suite(const std::string& name, std::uint64_t seed, std::uint64_t tag, std::uint64_t cases,
                        unsigned threads, const CaseFn& fn) {
  std::vector<std::string> result(cases);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t k; (k = next++) < cases;) {
      CaseRng g{splitmix(seed ^ splitmix(tag * 0x100000000ULL + k))};
      result[k] = fn(g);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  PropertySuite s{name, cases, 0, ""};
  for (std::uint64_t k = 0; k < cases; ++k)
    if (!result[k].empty()) {
      if (!s.failures) s.first_failure = "case " + std::to_string(k) + ": " + result[k];
      ++s.failures;
    }
  return s;
}

}  // namespace

bool PropertyReport::ok() const {
  for (const auto& s : suites)
    if (s.failures) return false;
  return true;
}

std::string PropertyReport::to_text() const {
  std::ostringstream os;
  os << "seed " << seed << "\n";
  for (const auto& s : suites) {
    os << s.name << ": " << s.cases << " cases, " << s.failures << " failures";
    if (s.failures) os << " (first " << s.first_failure << ")";
    os << "\n";
  }
  os << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

PropertyReport property_suites(std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  threads = std::max(1u, threads);
  PropertyReport rep;
  rep.seed = seed;
  rep.suites.push_back(run_suite("triangle_inequality", seed, 1, cases, threads, triangle_case));
  rep.suites.push_back(run_suite("lagrange_identity", seed, 2, cases, threads, lagrange_case));
  rep.suites.push_back(run_suite("primitive_pair_equivalence", seed, 3, cases, threads, primitive_case));
  rep.suites.push_back(run_suite("vperp_sandwich", seed, 4, cases, threads, vperp_case));

  const QuadraticIrrational alpha = QuadraticIrrational::sqrt2_minus_1();
  const Rat C1(4);
  PropertySuite cf{"cf_table_n_le_60", 60, 0, ""};
  try {
    const ConvergentTable t = convergents(alpha, 61, C1);
    for (std::size_t n = 1; n <= 60; ++n) {
      const int sn = alpha.sign_affine(-t.p(n), t.q(n)), sm = alpha.sign_affine(-t.p(n + 1), t.q(n + 1));
      const Int w = t.q(n) * t.p(n + 1) - t.p(n) * t.q(n + 1);
      if (sn == 0 || sn != -sm || (w != 1 && w != -1)) {
        if (!cf.failures) cf.first_failure = "n=" + std::to_string(n);
        ++cf.failures;
      }
    }
  } catch (const std::exception& e) {
    cf.failures = cf.cases;
    cf.first_failure = e.what();
  }
  rep.suites.push_back(cf);

  PropertySuite gap{"gap_lemma_n_le_12", 11, 0, ""};
  const ConvergentTable t = convergents(alpha, 13, C1);
  for (std::size_t n = 2; n <= 12; ++n) {
    const GapReport g = check_gap_lemma(t, n, C1);
    if (!g.ok()) {
      if (!gap.failures) gap.first_failure = "n=" + std::to_string(n);
      ++gap.failures;
    }
  }
  rep.suites.push_back(gap);
  return rep;
}

}  // namespace signcert
