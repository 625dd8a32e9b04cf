#pragma once

#include <cstddef>
#include <cstdint>

namespace signcert::kernels {

// Inputs for the double-precision condition (iv) filter. u, v, w are unit
// vectors rounded to nearest; the slacks already include the enclosure radii.
struct SlabFilterParams {
  double u[3], v[3], w[3];
  double u_slack;  // |x.u| >= |x.u~| - |x| u_slack
  double v_slack;  // dist(x, v) <= |x ^ v~|/|x| + v_slack
  double w_slack;
  const double* F = nullptr;  // F[b] <= psi(|x|)|x|^gamma for every |x|^2 in bucket b
  double n2_min = 0, bucket_scale = 0;
  int buckets = 0;
};

// pass[j] = 1 when the filter certifies candidate j; lo[j] is the lower
// bound it used for |x.u|. Both variants evaluate the same operations in
// the same order, so outputs are bit-identical.
void slab_filter_scalar(const SlabFilterParams& p, const double* x, const double* y, const double* z, std::size_t n,
                        std::uint8_t* pass, double* lo);
void slab_filter_avx2(const SlabFilterParams& p, const double* x, const double* y, const double* z, std::size_t n,
                      std::uint8_t* pass, double* lo);

}  // namespace signcert::kernels
