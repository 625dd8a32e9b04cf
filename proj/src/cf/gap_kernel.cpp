#include "signcert/cf/gap_kernel.hpp"

#include <algorithm>
#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace signcert::kernels {

std::int32_t min_abs_affine_scalar(std::int32_t c0, std::int32_t step, std::int32_t count) {
  std::int32_t best = INT32_MAX;
  for (std::int32_t j = 0; j < count; ++j) best = std::min(best, std::abs(c0 - j * step));
  return best;
}

#if defined(__x86_64__) || defined(__i386__)
__attribute__((target("avx2"))) std::int32_t min_abs_affine_avx2(std::int32_t c0, std::int32_t step,
                                                                 std::int32_t count) {
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i vstep = _mm256_set1_epi32(step);
  const __m256i stride = _mm256_set1_epi32(8 * step);
  __m256i v = _mm256_sub_epi32(_mm256_set1_epi32(c0), _mm256_mullo_epi32(lane, vstep));
  __m256i best = _mm256_set1_epi32(INT32_MAX);
  std::int32_t j = 0;
  for (; j + 8 <= count; j += 8) {
    best = _mm256_min_epi32(best, _mm256_abs_epi32(v));
    v = _mm256_sub_epi32(v, stride);
  }
  alignas(32) std::int32_t tmp[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), best);
  std::int32_t out = *std::min_element(tmp, tmp + 8);
  for (; j < count; ++j) out = std::min(out, std::abs(c0 - j * step));
  return out;
}
#else
std::int32_t min_abs_affine_avx2(std::int32_t c0, std::int32_t step, std::int32_t count) {
  return min_abs_affine_scalar(c0, step, count);
}
#endif

}  // namespace signcert::kernels
