#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "signcert/builder/build.hpp"
#include "signcert/simd/dispatch.hpp"

namespace signcert {

struct SlabOptions {
  Rat B;                    // norm cap
  unsigned K_near = 2;      // even
  unsigned threads = 1;
  simd::Isa isa = simd::Isa::Avx2;
  mpfr_prec_t max_prec = 4096;
  std::size_t buckets = 4096;  // psi(|x|)|x|^gamma lookup resolution
  std::vector<std::string> skipped_clauses;  // copied into the report
};

struct ScanItem {
  IVec3 x;
  Check check;
};

struct ScanReport {
  std::string C_prime, B;                // decimal
  Int n2_min, n2_max;                    // |x|^2 range actually scanned
  bool below_threshold = false;          // B < C'
  Check guard;
  std::size_t u_anchor = 0, k_axis = 0;  // U anchor and the solved coordinate
  std::uint64_t lines = 0, candidates = 0, fast_passed = 0, exact_passed = 0;
  std::vector<ScanItem> violations, undecided;
  double min_lower = 0;                  // smallest certified lower bound of |x.u|
  IVec3 min_lower_at;
  bool all_lower_positive = true;
  std::vector<std::string> skipped_clauses;
  std::string isa;
  unsigned threads = 1;
  double wall_seconds = 0;               // not part of the deterministic fields

  Status status() const;
};

// Condition (iv) on C' <= |x| <= B with C' = X2/X1: every x off the K_near
// nearest layers of the U plane is handled by one guard inequality, the rest
// are filtered in double precision with rigorous error slack and decided
// exactly when the filter is not conclusive.
ScanReport slab_scan_iv(const ConstructionState& st, const SlabOptions& opt);

// Exact decision of |x.u| psi(|x|) |x|^gamma >= dist(x, {v, w}) for one
// point, escalating through U anchors N, N-1, .. 1. Pass, Fail (certified
// violation) or Undecided. `lower` receives the best certified lower bound
// of |x.u| found.
Check certify_iv_point(const ConstructionState& st, const IVec3& x, mpfr_prec_t max_prec, double* lower = nullptr);

}  // namespace signcert
