// Built with -ffp-contract=off: the scalar and AVX2 paths must round identically.
#include "signcert/verifier/slab_kernel.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace signcert::kernels {

namespace {

constexpr double kShrink = 1.0 - 0x1p-40;

inline void filter_one(const SlabFilterParams& p, double x, double y, double z, std::uint8_t* pass, double* lo) {
  const double n2 = (x * x + y * y) + z * z;
  const double nx = std::sqrt(n2);
  const double d = (x * p.u[0] + y * p.u[1]) + z * p.u[2];
  const double l = std::fabs(d) - nx * p.u_slack;
  const double vx = y * p.v[2] - z * p.v[1], vy = z * p.v[0] - x * p.v[2], vz = x * p.v[1] - y * p.v[0];
  const double dv = std::sqrt((vx * vx + vy * vy) + vz * vz) / nx + p.v_slack;
  const double wx = y * p.w[2] - z * p.w[1], wy = z * p.w[0] - x * p.w[2], wz = x * p.w[1] - y * p.w[0];
  const double dw = std::sqrt((wx * wx + wy * wy) + wz * wz) / nx + p.w_slack;
  const double dm = dv < dw ? dv : dw;
  double t = (n2 - p.n2_min) * p.bucket_scale;
  t = t > 0.0 ? t : 0.0;
  const double top = static_cast<double>(p.buckets - 1);
  t = t < top ? t : top;
  const double F = p.F[static_cast<int>(t)];
  const double prod = (l * F) * kShrink;
  *pass = (l > 0.0) & (prod >= dm);
  *lo = l;
}

#if defined(__x86_64__) || defined(__i386__)
// |x ^ a| / |x| + slack, four lanes.
__attribute__((target("avx2"))) inline __m256d dist4(__m256d X, __m256d Y, __m256d Z, __m256d nx, __m256d a0,
                                                    __m256d a1, __m256d a2, __m256d slack) {
  const __m256d cx = _mm256_sub_pd(_mm256_mul_pd(Y, a2), _mm256_mul_pd(Z, a1));
  const __m256d cy = _mm256_sub_pd(_mm256_mul_pd(Z, a0), _mm256_mul_pd(X, a2));
  const __m256d cz = _mm256_sub_pd(_mm256_mul_pd(X, a1), _mm256_mul_pd(Y, a0));
  const __m256d c2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(cx, cx), _mm256_mul_pd(cy, cy)), _mm256_mul_pd(cz, cz));
  return _mm256_add_pd(_mm256_div_pd(_mm256_sqrt_pd(c2), nx), slack);
}
#endif

}  // namespace

void slab_filter_scalar(const SlabFilterParams& p, const double* x, const double* y, const double* z, std::size_t n,
                        std::uint8_t* pass, double* lo) {
  for (std::size_t j = 0; j < n; ++j) filter_one(p, x[j], y[j], z[j], pass + j, lo + j);
}

#if defined(__x86_64__) || defined(__i386__)
__attribute__((target("avx2"))) void slab_filter_avx2(const SlabFilterParams& p, const double* x, const double* y,
                                                      const double* z, std::size_t n, std::uint8_t* pass, double* lo) {
  const __m256d sign = _mm256_set1_pd(-0.0), zero = _mm256_setzero_pd();
  const __m256d u0 = _mm256_set1_pd(p.u[0]), u1 = _mm256_set1_pd(p.u[1]), u2 = _mm256_set1_pd(p.u[2]);
  const __m256d v0 = _mm256_set1_pd(p.v[0]), v1 = _mm256_set1_pd(p.v[1]), v2 = _mm256_set1_pd(p.v[2]);
  const __m256d w0 = _mm256_set1_pd(p.w[0]), w1 = _mm256_set1_pd(p.w[1]), w2 = _mm256_set1_pd(p.w[2]);
  const __m256d us = _mm256_set1_pd(p.u_slack), vs = _mm256_set1_pd(p.v_slack), ws = _mm256_set1_pd(p.w_slack);
  const __m256d n2min = _mm256_set1_pd(p.n2_min), scale = _mm256_set1_pd(p.bucket_scale);
  const __m256d top = _mm256_set1_pd(static_cast<double>(p.buckets - 1)), shrink = _mm256_set1_pd(kShrink);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d X = _mm256_loadu_pd(x + j), Y = _mm256_loadu_pd(y + j), Z = _mm256_loadu_pd(z + j);
    const __m256d n2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(X, X), _mm256_mul_pd(Y, Y)), _mm256_mul_pd(Z, Z));
    const __m256d nx = _mm256_sqrt_pd(n2);
    const __m256d d = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(X, u0), _mm256_mul_pd(Y, u1)), _mm256_mul_pd(Z, u2));
    const __m256d l = _mm256_sub_pd(_mm256_andnot_pd(sign, d), _mm256_mul_pd(nx, us));
    const __m256d dm = _mm256_min_pd(dist4(X, Y, Z, nx, v0, v1, v2, vs), dist4(X, Y, Z, nx, w0, w1, w2, ws));
    __m256d t = _mm256_mul_pd(_mm256_sub_pd(n2, n2min), scale);
    t = _mm256_max_pd(t, zero);
    t = _mm256_min_pd(t, top);
    const __m256d F = _mm256_i32gather_pd(p.F, _mm256_cvttpd_epi32(t), 8);
    const __m256d prod = _mm256_mul_pd(_mm256_mul_pd(l, F), shrink);
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(l, zero, _CMP_GT_OQ), _mm256_cmp_pd(prod, dm, _CMP_GE_OQ));
    const int mask = _mm256_movemask_pd(ok);
    for (int k = 0; k < 4; ++k) pass[j + k] = static_cast<std::uint8_t>((mask >> k) & 1);
    _mm256_storeu_pd(lo + j, l);
  }
  for (; j < n; ++j) filter_one(p, x[j], y[j], z[j], pass + j, lo + j);
}
#else
void slab_filter_avx2(const SlabFilterParams& p, const double* x, const double* y, const double* z, std::size_t n,
                      std::uint8_t* pass, double* lo) {
  slab_filter_scalar(p, x, y, z, n, pass, lo);
}
#endif

}  // namespace signcert::kernels
