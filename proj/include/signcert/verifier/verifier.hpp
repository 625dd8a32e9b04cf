#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "signcert/builder/build.hpp"
#include "signcert/verifier/ledger.hpp"

namespace signcert {

// min{|x.v_perp|, |x.w_perp|} <= |x| dist(x, {v, w}) <= |x.u| + min{...} for
// u, v, w given by integer multiples with U.V = U.W = 0 (V, W need not be
// orthogonal to each other). Everything is decided on exact squares:
//   A_v^2 = det(x,U,V)^2 / (|U|^2 |V|^2)   = |x.v_perp|^2
//   B_v^2 = |x ^ V|^2 / |V|^2              = (|x| dist(x, v))^2
//   a^2   = (x.U)^2 / |U|^2                = |x.u|^2
// with B_v^2 = A_v^2 + a^2 checked as an identity.
struct VperpResult {
  Rat a_sq, Av_sq, Aw_sq, Bv_sq, Bw_sq;
  std::vector<Check> checks;
  Status status() const { return combine(checks); }
};

VperpResult vperp_sandwich_check(const IVec3& U, const IVec3& V, const IVec3& W, const IVec3& x);

// ---- condition (iii) witnesses

struct WitnessSample {
  std::size_t k = 0;
  std::string X;           // decimal enclosure of the sample
  std::size_t i = 0;       // 5C1 X_{i-1} <= X < 5C1 X_i, witness x_{i-1}
  IVec3 witness;
  std::vector<Check> checks;
};

struct WitnessReport {
  std::string C;
  std::vector<WitnessSample> samples;
  Status status() const;
};

// count log-spaced samples X_k = 5C1 X0^(1-k/count) X_N^(k/count), k < count.
std::vector<Real> witness_grid(const ConstructionState& st, std::size_t count = 32);

WitnessReport check_condition_iii(const ConstructionState& st, const std::vector<Real>& X_samples, const Real& C,
                                  mpfr_prec_t max_prec = kDefaultMaxPrec);
// 32-point grid with C = C4.
WitnessReport check_condition_iii(const ConstructionState& st, mpfr_prec_t max_prec = kDefaultMaxPrec);

// ---- coefficient box

enum class BoxBranch { OffPlane, InPlane, Multiple };  // q != 0 / q = 0, p != 0 / q = p = 0

std::string to_string(BoxBranch b);

struct BoxItem {
  long q = 0, p = 0, r = 0;
  IVec3 x;
  BoxBranch branch = BoxBranch::OffPlane;
  Check check;
};

struct BoxReport {
  std::size_t i = 0;
  long K = 0;
  std::uint64_t enumerated = 0, in_range = 0, passed = 0, identities = 0;
  std::uint64_t branch_count[3] = {0, 0, 0};
  std::vector<std::size_t> anchor_used;  // histogram over anchors N, N-1, .., i
  std::vector<BoxItem> violations, undecided;
  std::vector<Check> identity_failures;
  Status status() const;
};

// All x = q y_i + p x_{i-1} + r x_i with (q,p,r) in [-K,K]^3 \ 0 and
// X_i/X1 <= |x| < X_{i+1}/X1. Needs 2 <= i <= N-2 so that the multiple
// branch has anchor i+2.
BoxReport coeff_box(const ConstructionState& st, std::size_t i, long K = 8, unsigned threads = 1,
                           mpfr_prec_t max_prec = kDefaultMaxPrec);

// ---- reporting frame

struct AlphaBeta {
  Interval alpha{128}, beta{128};
  std::size_t anchor = 0;
};

// u = (1, alpha, beta) up to scale, from the U enclosure at `anchor` (default N).
AlphaBeta export_alpha_beta(const DirectionEnclosure& u);
AlphaBeta export_alpha_beta(const ConstructionState& st, std::size_t anchor = 0);

// ---- property suites

struct PropertySuite {
  std::string name;
  std::uint64_t cases = 0, failures = 0;
  std::string first_failure;
};

struct PropertyReport {
  std::uint64_t seed = 0;
  std::vector<PropertySuite> suites;
  bool ok() const;
  // Stable text rendering, independent of the thread count.
  std::string to_text() const;
};

PropertyReport property_suites(std::uint64_t seed, std::uint64_t cases = 1000, unsigned threads = 1);

}  // namespace signcert
