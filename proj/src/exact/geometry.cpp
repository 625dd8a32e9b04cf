#include "signcert/exact/geometry.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace signcert {

ProjDistSq proj_dist_sq(const IVec3& a, const IVec3& b) {
  if (a.is_zero() || b.is_zero()) throw GeometryError("proj_dist_sq: zero vector");
  Rat v(norm_sq(cross(a, b)), norm_sq(a) * norm_sq(b));
  v.canonicalize();
  return {v};
}

Real proj_dist(const IVec3& a, const IVec3& b) { return Real::sqrt_of(proj_dist_sq(a, b).value); }

BallReal proj_dist_ball(const IVec3& a, const IVec3& b, mpfr_prec_t prec) {
  // A few guard bits keep the outward-rounded sqrt within 2^(1-prec).
  return BallReal(proj_dist(a, b), prec + 4);
}

Real norm(const IVec3& a) { return Real::sqrt_of(norm_sq(a)); }

bool is_primitive_point(const IVec3& a) { return !a.is_zero() && content(a) == 1; }

bool is_primitive_pair(const IVec3& a, const IVec3& b) { return is_primitive_point(cross(a, b)); }

IVec3 solve_unit_dot(const IVec3& c) {
  // g01 = s0 c0 + s1 c1, then 1 = t g01 + t2 c2.
  Int g01, s0, s1;
  mpz_gcdext(g01.get_mpz_t(), s0.get_mpz_t(), s1.get_mpz_t(), c[0].get_mpz_t(), c[1].get_mpz_t());
  Int g, t, t2;
  mpz_gcdext(g.get_mpz_t(), t.get_mpz_t(), t2.get_mpz_t(), g01.get_mpz_t(), c[2].get_mpz_t());
  if (g != 1) throw GeometryError("solve_unit_dot: vector is not primitive");
  IVec3 w(t * s0, t * s1, t2);
  if (dot(c, w) != 1) throw std::logic_error("solve_unit_dot: extended gcd chain failed");
  return w;
}

namespace {

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Lagrange-Gauss reduction of a rank-2 lattice basis.
void gauss_reduce(IVec3& b1, IVec3& b2) {
  if (norm_sq(b1) > norm_sq(b2)) std::swap(b1, b2);
  for (;;) {
    Rat mu(dot(b1, b2), norm_sq(b1));
    mu.canonicalize();
    Int k = floor_rat(mu + Rat(1, 2));
    if (k != 0) b2 = b2 - k * b1;
    if (norm_sq(b2) >= norm_sq(b1)) return;
    std::swap(b1, b2);
  }
}

}  // namespace

IVec3 complete_to_basis(const IVec3& a, const IVec3& b) {
  const IVec3 c = cross(a, b);
  if (!is_primitive_point(c)) throw GeometryError("complete_to_basis: pair is not primitive");
  const IVec3 w = solve_unit_dot(c);

  IVec3 b1 = a, b2 = b;
  gauss_reduce(b1, b2);

  // Coordinates of the projection of w on span(b1, b2).
  const Int g11 = norm_sq(b1), g12 = dot(b1, b2), g22 = norm_sq(b2);
  const Int d = g11 * g22 - g12 * g12;
  const Int r1 = dot(w, b1), r2 = dot(w, b2);
  Rat kappa2(g11 * r2 - g12 * r1, d);
  kappa2.canonicalize();

  // With a reduced basis the optimal coefficient of b2 is within 2/sqrt(3)
  // of kappa2, and for a fixed one the best coefficient of b1 is the floor
  // or ceiling of the 1-D minimiser.
  const Int centre = floor_rat(kappa2 + Rat(1, 2));
  std::optional<IVec3> best;
  Int best_n;
  for (Int k2 = centre - 2; k2 <= centre + 2; ++k2) {
    const IVec3 base = w - k2 * b2;
    Rat m(dot(base, b1), g11);
    m.canonicalize();
    const Int f = floor_rat(m);
    for (Int k1 = f; k1 <= f + 1; ++k1) {
      IVec3 z = base - k1 * b1;
      Int n = norm_sq(z);
      if (!best || n < best_n || (n == best_n && lex_less(z, *best))) {
        best = std::move(z);
        best_n = std::move(n);
      }
    }
  }
  if (det3(a, b, *best) != 1) throw std::logic_error("complete_to_basis: determinant check failed");
  return *best;
}

std::vector<Int> elementary_divisors(const std::vector<IVec3>& cols) {
  const std::size_t k = cols.size();
  if (k == 0 || k > 3) throw GeometryError("elementary_divisors: need 1 to 3 columns");
  std::array<std::array<Int, 3>, 3> m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = cols[j][i];

  auto swap_rows = [&](std::size_t r, std::size_t s) { std::swap(m[r], m[s]); };
  auto swap_cols = [&](std::size_t r, std::size_t s) {
    for (auto& row : m) std::swap(row[r], row[s]);
  };

  std::vector<Int> out;
  const std::size_t steps = std::min<std::size_t>(3, k);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      for (std::size_t i = t; i < 3; ++i)
        for (std::size_t j = t; j < k; ++j)
          if (m[i][j] != 0 && (!piv || ::abs(m[i][j]) < ::abs(m[piv->first][piv->second])))
            piv = {i, j};
      if (!piv) {
        for (std::size_t r = t; r < steps; ++r) out.emplace_back(0);
        return out;
      }
      swap_rows(t, piv->first);
      swap_cols(t, piv->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < 3; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < k; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < 3; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < 3 && !bad_row; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t()) == 0) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        for (std::size_t j = t; j < k; ++j) m[t][j] += m[*bad_row][j];
        continue;
      }
      out.push_back(::abs(m[t][t]));
      break;
    }
  }
  return out;
}

}  // namespace signcert
