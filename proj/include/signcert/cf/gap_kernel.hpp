#pragma once

#include <cstdint>

namespace signcert::kernels {

// min over j in [0, count) of |c0 - j * step|. All intermediate values must fit
// in int32 (the caller guarantees |c0| + count * |step| < 2^31).
std::int32_t min_abs_affine_scalar(std::int32_t c0, std::int32_t step, std::int32_t count);
std::int32_t min_abs_affine_avx2(std::int32_t c0, std::int32_t step, std::int32_t count);

}  // namespace signcert::kernels
