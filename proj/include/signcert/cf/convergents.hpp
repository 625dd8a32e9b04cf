#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "signcert/cf/quadratic.hpp"
#include "signcert/simd/dispatch.hpp"

namespace signcert {

// Convergents p_n / q_n, n = 1..size(), with p_1 = 0 and q_1 = 1.
class ConvergentTable {
 public:
  ConvergentTable() = default;
  ConvergentTable(QuadraticIrrational alpha, Rat C1, std::vector<Int> p, std::vector<Int> q,
                  std::vector<Int> partial_quotients);

  std::size_t size() const { return q_.size(); }
  const Int& p(std::size_t n) const { return p_.at(n - 1); }
  const Int& q(std::size_t n) const { return q_.at(n - 1); }
  const Int& partial_quotient(std::size_t n) const { return a_.at(n - 1); }
  const QuadraticIrrational& alpha() const { return alpha_; }
  const Rat& C1() const { return C1_; }

 private:
  QuadraticIrrational alpha_;
  Rat C1_;
  std::vector<Int> p_, q_, a_;
};

// Continued-fraction expansion of alpha, with cf1..cf4 checked exactly for
// n = 1..N (cf4 and cf3 need q_{N+1}, which is computed but not stored).
// Throws CfError on any failed check.
ConvergentTable convergents(const QuadraticIrrational& alpha, std::size_t N, const Rat& C1);

// Extends `table` until q_N >= bound (or N reaches max_len).
ConvergentTable convergents_until(const QuadraticIrrational& alpha, const Int& bound, const Rat& C1,
                                  std::size_t max_len = 1 << 16);

struct BadApproxCertificate {
  Rat C1;
  Int Q;
  Int brute_force_limit;         // every q <= this was enumerated
  std::size_t convergents_checked = 0;
  Int argmin_q, argmin_p;        // minimiser of q |q alpha - p| over all checks
  Interval min_value{64};        // enclosure of that minimum
  Rat algebraic_C1_upper;        // |A| (|alpha - alpha'| + 1/2), rounded up
  bool algebraic_ok = false;     // algebraic_C1_upper <= C1
  bool ok = false;
  std::optional<std::pair<Int, Int>> violation;  // (q, p)
};

// Certifies |q alpha - p| >= 1 / (C1 q) for every 1 <= q <= Q. Small q are
// enumerated; beyond that the convergents carry the bound because for
// q_k <= q < q_{k+1} one has |q alpha - p| >= |q_k alpha - p_k| and q >= q_k.
BadApproxCertificate certify_bad_approx(const QuadraticIrrational& alpha, const Rat& C1, const Int& Q,
                                        const Int& brute_force_limit = Int(1) << 16);

// The n >= 2 with q_{n-1} <= T < q_n. A rational T equal to q_k gives k + 1.
// Throws CfError if undecided at max_prec or the table is too short.
std::size_t locate_n(const Real& T, const ConvergentTable& table, mpfr_prec_t max_prec = kDefaultMaxPrec);

struct GapReport {
  std::size_t n = 0;
  Int qn, pn;
  Rat C1;
  Rat min_ratio;              // min over (p, q) of |q p_n - p q_n| * |q| / q_n
  Int argmin_q, argmin_p;
  std::uint64_t pairs_checked = 0;
  bool boundary_ok = false;   // |q p_n - p q_n| grows for |p| > q_n
  std::vector<std::pair<Int, Int>> violations;
  bool ok() const { return violations.empty() && boundary_ok && min_ratio * 2 * C1 >= 1; }
};

// Brute force of |q p_n - p q_n| >= q_n / (2 C1 |q|) over 1 <= |q| < q_n, |p| <= q_n.
GapReport check_gap_lemma(const ConvergentTable& table, std::size_t n, const Rat& C1,
                          simd::Isa isa = simd::Isa::Avx2);

}  // namespace signcert
